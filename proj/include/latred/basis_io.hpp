#pragma once

#include <iosfwd>
#include <string>

#include "latred/basis.hpp"

namespace latred {

// Bracketed integer-matrix format, interchangeable with the usual lattice
// tools: "[[a11 a12 ...][a21 ...]...]", whitespace-separated decimal
// integers. write_basis emits one row per line; read_basis accepts arbitrary
// whitespace. Round trips are bit-exact.
Basis read_basis(std::istream& in);
Basis read_basis(const std::string& path);
void write_basis(std::ostream& out, const Basis& b);
void write_basis(const std::string& path, const Basis& b);

}  // namespace latred
