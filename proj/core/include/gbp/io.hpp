#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "gbp/graph.hpp"
#include "gbp/planar.hpp"

namespace gbp {

struct InstanceFile {
  Instance instance;
  std::optional<Coordinates> coords;
};

/*
   Line format, indices 0-based, '#' starts a comment:
     V n
     C x y        (optional, n lines)
     E m
     u v cost     (m lines)
     H r
     s v1 .. vs   (r lines)
     K k          (optional)
   Throws ParseError carrying the line number, InputError when the parsed
   instance fails validation.
*/
InstanceFile parse_instance(std::istream &in);
InstanceFile read_instance_file(const std::string &path);

void write_instance(std::ostream &out, const Instance &inst, const Coordinates *coords = nullptr);
void write_instance_file(const std::string &path, const Instance &inst,
                         const Coordinates *coords = nullptr);
std::string instance_to_string(const Instance &inst, const Coordinates *coords = nullptr);

/// "F s" followed by s edge indices (whitespace separated, any line layout).
Solution parse_solution(std::istream &in, const Instance &inst);
Solution read_solution_file(const std::string &path, const Instance &inst);
void write_solution(std::ostream &out, const Solution &sol);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);
/// Fixed-point with `digits` decimals, always '.' as separator.
std::string format_fixed(double value, int digits);

} // namespace gbp
