#include <doctest.h>

#include <sstream>

#include "gbp/errors.hpp"
#include "gbp/generators.hpp"
#include "gbp/io.hpp"
#include "test_support.hpp"

using namespace gbp;
namespace t = gbp::testing;

namespace {

InstanceFile parse(const std::string &text) {
  std::istringstream in(text);
  return parse_instance(in);
}

int content_lines(const std::string &text) {
  std::istringstream in(text);
  int n = 0;
  for (std::string line; std::getline(in, line);)
    if (!line.empty())
      ++n;
  return n;
}

int parse_error_line(const std::string &text) {
  try {
    parse(text);
  } catch (const ParseError &e) {
    return e.line();
  }
  return -1;
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("two-triangle file layout") {
  Instance inst = t::two_triangles();
  // V, E, five edges, H, two habitats
  CHECK(content_lines(instance_to_string(inst)) == 1 + 1 + 5 + 1 + 2);
  Coordinates c = t::two_triangles_coords();
  CHECK(content_lines(instance_to_string(inst, &c)) == 1 + 4 + 1 + 5 + 1 + 2);
  inst.budget = 3;
  CHECK(content_lines(instance_to_string(inst, &c)) == 1 + 4 + 1 + 5 + 1 + 2 + 1);
  CHECK(instance_to_string(inst) ==
        "V 4\nE 5\n0 1 1\n0 2 1\n1 2 1\n0 3 1\n1 3 1\nH 2\n3 0 1 2\n3 0 1 3\nK 3\n");
}

TEST_CASE("comments and blank lines are ignored") {
  InstanceFile f = parse("# generated\n\n# more\nV 2 # two vertices\nE 1\n0 1 7\nH 1\n2 0 1\n");
  CHECK(f.instance.graph.edge_count() == 1);
  CHECK(f.instance.costs == std::vector<Cost>{7});
  CHECK_FALSE(f.coords.has_value());
  CHECK_FALSE(f.instance.budget.has_value());
}

TEST_CASE("malformed files report the line") {
  CHECK(parse_error_line("V 2\nE 1\n0 1 x\nH 0\n") == 3);
  CHECK(parse_error_line("V 2\nE 1\n0 1 1\nH 1\n1 0\n") == 5); // habitat of size one
  CHECK(parse_error_line("V 2\nE 1\n0 5 1\nH 0\n") == 3);
  CHECK(parse_error_line("V 2\nE 2\n0 1 1\n") > 0);
  CHECK(parse_error_line("V 2\nE 0\nH 0\nK 1\nK 2\n") == 5);
  CHECK(parse_error_line("X 2\n") == 1);
  CHECK(parse_error_line("V 2\nC 0 0\nE 0\nH 0\n") == 3);
  CHECK_THROWS_AS(parse("V 2\nE 1\n0 1 1\nH 1\n2 0 4\n"), Error);
  CHECK_THROWS_AS(parse("V 2\nE 1\n0 1 0\nH 0\n"), InputError);
  CHECK_THROWS_AS(read_instance_file("/nonexistent/instance.txt"), IoError);
}

TEST_CASE("solutions") {
  Instance inst = t::two_triangles();
  Solution s = Solution::from_edges(inst, {3, 0, 1});
  std::ostringstream out;
  write_solution(out, s);
  CHECK(out.str() == "F 3\n0 1 3\n");
  std::istringstream in(out.str());
  CHECK(parse_solution(in, inst) == s);
  std::istringstream spread("F 2\n0\n\n4\n");
  CHECK(parse_solution(spread, inst).edges == std::vector<EdgeId>{0, 4});
  std::istringstream bad("F 1\n9\n");
  CHECK_THROWS_AS(parse_solution(bad, inst), ParseError);
  std::istringstream extra("F 1\n1 2\n");
  CHECK_THROWS_AS(parse_solution(extra, inst), ParseError);
  std::ostringstream empty;
  write_solution(empty, Solution{});
  CHECK(empty.str() == "F 0\n");
}

TEST_CASE("number formatting is locale independent") {
  CHECK(format_fixed(1.5, 3) == "1.500");
  CHECK(format_double(0.1) == "0.1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("property: write then parse is the identity") {
  for (Seed seed = 1; seed <= 60; ++seed) {
    PlaneGraph pg = random_plane_graph(30 + static_cast<int>(seed), seed);
    Instance inst = seed % 2 ? gen_walk_instance(pg.graph, pg.costs, 5, 4, seed)
                             : gen_face_instance(pg, 5, seed);
    if (seed % 3 == 0)
      inst.budget = static_cast<Cost>(seed);
    std::string text = instance_to_string(inst, &pg.coords);
    InstanceFile back = parse(text);
    CHECK(back.coords == pg.coords);
    CHECK(back.instance.costs == inst.costs);
    CHECK(back.instance.habitats == inst.habitats);
    CHECK(back.instance.budget == inst.budget);
    CHECK(std::equal(back.instance.graph.edges().begin(), back.instance.graph.edges().end(),
                     inst.graph.edges().begin(), inst.graph.edges().end()));
    CHECK(instance_to_string(back.instance, &*back.coords) == text);
  }
}

}
