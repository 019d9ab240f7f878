#include "pstar/fixtures.hpp"

#include "pstar/io.hpp"

namespace pstar::fixtures {

std::string_view florentine_adjacency() {
  static constexpr std::string_view kText =
      "# Business ties between 16 Renaissance Florentine families.\n"
      "# 20 edges, 47 2-stars, 3 triangles.\n"
      "0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0\n"
      "0 0 0 0 0 1 1 0 1 0 0 0 0 0 0 0\n"
      "0 0 0 0 1 0 0 0 1 0 0 0 0 0 0 0\n"
      "0 0 0 0 0 0 1 0 0 0 1 0 0 0 1 0\n"
      "0 0 1 0 0 0 0 0 0 0 1 0 0 0 1 0\n"
      "0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 1 0 1 0 0 0 1 0 0 0 0 0 0 0 1\n"
      "0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0\n"
      "1 1 1 0 0 0 0 0 0 0 0 0 1 1 0 1\n"
      "0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0\n"
      "0 0 0 1 1 0 0 0 0 0 0 0 0 0 1 0\n"
      "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 0 0 0 0 0 0 0 1 0 0 0 0 0 1 1\n"
      "0 0 0 0 0 0 0 0 1 1 0 0 0 0 0 0\n"
      "0 0 0 1 1 0 0 0 0 0 1 0 1 0 0 0\n"
      "0 0 0 0 0 0 1 0 1 0 0 0 1 0 0 0\n";
  return kText;
}

Graph florentine() { return io::parse_adjacency(florentine_adjacency()); }

}  // namespace pstar::fixtures
