#include "gbp/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gbp/errors.hpp"

namespace gbp {

namespace {

class LineReader {
public:
  explicit LineReader(std::istream &in) : in_(in) {}

  // Next non-empty line with comments stripped, split on whitespace.
  bool next(std::vector<std::string> &tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++number_;
      if (auto hash = line.find('#'); hash != std::string::npos)
        line.erase(hash);
      std::istringstream ss(line);
      tokens.clear();
      for (std::string t; ss >> t;)
        tokens.push_back(std::move(t));
      if (!tokens.empty())
        return true;
    }
    ++number_;
    return false;
  }

  int line() const { return number_; }

private:
  std::istream &in_;
  int number_ = 0;
};

template <class T> T parse_number(const std::string &token, int line, const char *what) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + token + "'");
  return value;
}

int parse_count(const std::string &token, int line) {
  int value = parse_number<int>(token, line, "a count");
  if (value < 0)
    throw ParseError(line, "negative count " + token);
  return value;
}

void expect_arity(const std::vector<std::string> &tokens, std::size_t n, int line) {
  if (tokens.size() != n)
    throw ParseError(line, "expected " + std::to_string(n) + " fields, got " +
                               std::to_string(tokens.size()));
}

int expect_header(LineReader &reader, std::vector<std::string> &tokens, const char *tag) {
  if (!reader.next(tokens))
    throw ParseError(reader.line(), std::string("missing '") + tag + "' line");
  if (tokens[0] != tag)
    throw ParseError(reader.line(), std::string("expected '") + tag + "', got '" + tokens[0] + "'");
  expect_arity(tokens, 2, reader.line());
  return parse_count(tokens[1], reader.line());
}

} // namespace

InstanceFile parse_instance(std::istream &in) {
  LineReader reader(in);
  std::vector<std::string> tok;
  const int n = expect_header(reader, tok, "V");

  if (!reader.next(tok))
    throw ParseError(reader.line(), "missing 'E' line");
  std::optional<Coordinates> coords;
  if (tok[0] == "C") {
    coords.emplace();
    for (int i = 0; i < n; ++i) {
      if (i > 0 && !reader.next(tok))
        throw ParseError(reader.line(), "expected " + std::to_string(n) + " 'C' lines");
      if (tok[0] != "C")
        throw ParseError(reader.line(), "expected 'C', got '" + tok[0] + "'");
      expect_arity(tok, 3, reader.line());
      coords->push_back({parse_number<double>(tok[1], reader.line(), "a coordinate"),
                         parse_number<double>(tok[2], reader.line(), "a coordinate")});
    }
    if (!reader.next(tok))
      throw ParseError(reader.line(), "missing 'E' line");
  }
  if (tok[0] != "E")
    throw ParseError(reader.line(), "expected 'E', got '" + tok[0] + "'");
  expect_arity(tok, 2, reader.line());
  const int m = parse_count(tok[1], reader.line());

  Graph g(n);
  std::vector<Cost> costs;
  costs.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    if (!reader.next(tok))
      throw ParseError(reader.line(), "expected " + std::to_string(m) + " edge lines");
    expect_arity(tok, 3, reader.line());
    int u = parse_number<int>(tok[0], reader.line(), "a vertex");
    int v = parse_number<int>(tok[1], reader.line(), "a vertex");
    try {
      g.add_edge(u, v);
    } catch (const InputError &e) {
      throw ParseError(reader.line(), e.what());
    }
    costs.push_back(parse_number<Cost>(tok[2], reader.line(), "an edge cost"));
  }

  const int r = expect_header(reader, tok, "H");
  std::vector<Habitat> habitats;
  for (int i = 0; i < r; ++i) {
    if (!reader.next(tok))
      throw ParseError(reader.line(), "expected " + std::to_string(r) + " habitat lines");
    const int s = parse_count(tok[0], reader.line());
    expect_arity(tok, static_cast<std::size_t>(s) + 1, reader.line());
    std::vector<Vertex> vs;
    for (int j = 1; j <= s; ++j)
      vs.push_back(parse_number<int>(tok[static_cast<std::size_t>(j)], reader.line(), "a vertex"));
    try {
      habitats.emplace_back(std::move(vs));
    } catch (const InputError &e) {
      throw ParseError(reader.line(), e.what());
    }
  }

  std::optional<Cost> budget;
  if (reader.next(tok)) {
    if (tok[0] != "K")
      throw ParseError(reader.line(), "unexpected '" + tok[0] + "' after habitats");
    expect_arity(tok, 2, reader.line());
    budget = parse_number<Cost>(tok[1], reader.line(), "a budget");
    if (reader.next(tok))
      throw ParseError(reader.line(), "trailing content after 'K'");
  }

  InstanceFile file{make_instance(std::move(g), std::move(costs), std::move(habitats), budget),
                    std::move(coords)};
  return file;
}

InstanceFile read_instance_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open " + path);
  return parse_instance(in);
}

void write_instance(std::ostream &out, const Instance &inst, const Coordinates *coords) {
  const Graph &g = inst.graph;
  out << "V " << g.vertex_count() << '\n';
  if (coords) {
    if (static_cast<int>(coords->size()) != g.vertex_count())
      throw InputError("coordinate count differs from vertex count");
    for (const Point &p : *coords)
      out << "C " << format_double(p.x) << ' ' << format_double(p.y) << '\n';
  }
  out << "E " << g.edge_count() << '\n';
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    out << g.edge(e).u << ' ' << g.edge(e).v << ' ' << inst.costs[static_cast<std::size_t>(e)]
        << '\n';
  out << "H " << inst.habitats.size() << '\n';
  for (const Habitat &h : inst.habitats) {
    out << h.size();
    for (Vertex v : h.vertices())
      out << ' ' << v;
    out << '\n';
  }
  if (inst.budget)
    out << "K " << *inst.budget << '\n';
}

void write_instance_file(const std::string &path, const Instance &inst, const Coordinates *coords) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot write " + path);
  write_instance(out, inst, coords);
  if (!out)
    throw IoError("write failed for " + path);
}

std::string instance_to_string(const Instance &inst, const Coordinates *coords) {
  std::ostringstream ss;
  write_instance(ss, inst, coords);
  return ss.str();
}

Solution parse_solution(std::istream &in, const Instance &inst) {
  LineReader reader(in);
  std::vector<std::string> tok;
  if (!reader.next(tok) || tok[0] != "F" || tok.size() < 2)
    throw ParseError(reader.line(), "expected 'F s'");
  const int s = parse_count(tok[1], reader.line());
  std::vector<EdgeId> edges;
  std::size_t pos = 2;
  while (static_cast<int>(edges.size()) < s) {
    if (pos == tok.size()) {
      if (!reader.next(tok))
        throw ParseError(reader.line(), "expected " + std::to_string(s) + " edge indices");
      pos = 0;
    }
    EdgeId e = parse_number<int>(tok[pos++], reader.line(), "an edge index");
    if (!inst.graph.valid_edge(e))
      throw ParseError(reader.line(), "edge index " + std::to_string(e) + " out of range");
    edges.push_back(e);
  }
  if (pos != tok.size() || reader.next(tok))
    throw ParseError(reader.line(), "trailing content after solution");
  return Solution::from_edges(inst, std::move(edges));
}

Solution read_solution_file(const std::string &path, const Instance &inst) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open " + path);
  return parse_solution(in, inst);
}

void write_solution(std::ostream &out, const Solution &sol) {
  out << "F " << sol.edges.size() << '\n';
  for (std::size_t i = 0; i < sol.edges.size(); ++i)
    out << sol.edges[i] << (i + 1 == sol.edges.size() ? "\n" : " ");
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc())
    throw IntegrityError("cannot format double");
  return std::string(buf, ptr);
}

std::string format_fixed(double value, int digits) {
  char buf[128];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, digits);
  if (ec != std::errc())
    throw IntegrityError("cannot format double");
  return std::string(buf, ptr);
}

} // namespace gbp
