#pragma once

// Line-oriented text formats. All parsers treat '#' as the start of a comment
// and throw ParseError carrying a 1-based line number.
//
// Algebra:    "size N", then per operation "op NAME ARITY" followed by
//             N^ARITY integers in row-major order.
// Relation:   "rel N", then N lines of N characters '0'/'1'.
// Pairs:      "a-b,c-d" inline, or one "a b" per line in a file.
// Lift:       sections "blocks K", "elements M", one "op NAME ARITY" table
//             per operation, "theta" and "phi".

#include <string>
#include <string_view>
#include <vector>

#include "tolift/algebra.hpp"
#include "tolift/complex.hpp"
#include "tolift/lift.hpp"
#include "tolift/relation.hpp"

namespace tolift {

FiniteAlgebra parse_algebra(std::string_view text);
std::string format_algebra(FiniteAlgebra const& alg);

BinaryRelation parse_relation(std::string_view text);
std::string format_relation(BinaryRelation const& r);

std::vector<Pair> parse_pairs_spec(std::string_view spec);
std::vector<Pair> parse_pairs_file(std::string_view text);

std::string format_tolerance_list(std::vector<Tolerance> const& ts);

// The complex algebra in the algebra format, preceded by comment lines
// decoding each carrier index to its subset.
std::string format_complex_algebra(ComplexAlgebra const& c);

std::string format_lift(LiftResult const& lr);
// Reads back everything but the verification report, which is left empty.
// `base_size` is the size of the algebra the lift claims to cover.
LiftResult parse_lift(std::string_view text, std::size_t base_size);

}  // namespace tolift
