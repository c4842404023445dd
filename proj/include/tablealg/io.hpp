#pragma once

#include <iosfwd>
#include <string>

#include "tablealg/homquot.hpp"
#include "tablealg/schemes.hpp"

namespace tablealg {

/// Parses the ".ta" text format:
///   rank d
///   labels s0 ... s(d-1)
///   star p0 ... p(d-1)
///   i j k v        (one nonzero constant per line; omitted entries are 0)
/// '#' starts a comment. Throws FormatError on malformed input.
TableAlgebra parse_ta(const std::string& text, double tol = kDefaultTol);
TableAlgebra load_ta(const std::string& path, double tol = kDefaultTol);

/// Serializes in the same format (shortest round-trip float rendering).
std::string write_ta(const TableAlgebra& a);

/// Parses the ".scm" text format:
///   points n relations r
///   n rows of n relation indices
/// '#' starts a comment.
Scheme parse_scm(const std::string& text);
Scheme load_scm(const std::string& path);

std::string write_scm(const Scheme& s);

/// Parses a phi map file: one "source-index target-index scalar" triple
/// per line, '#' comments. Indices not listed are an error.
AlgebraHom parse_phi_map(const std::string& text, const TableAlgebra& source,
                         const TableAlgebra& target);

std::string write_phi_map(const AlgebraHom& phi);

/// Shortest decimal rendering that round-trips to the same double.
std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tablealg
