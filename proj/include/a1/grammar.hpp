#pragma once

// Text grammars for fields, polynomials, points, seeds and GW classes.
// Every parse failure is a SyntaxError carrying a 0-based offset.

#include <map>
#include <string>
#include <vector>

#include "a1/field.hpp"
#include "a1/gw.hpp"
#include "a1/polynomial.hpp"

namespace a1 {

/// Q | F<q> followed by suffixes (name):[minpoly], (name):minpoly, (name), ((t;m;N[;lambda])).
/// F<q> with q a prime power r > 1 is F_p(w) modulo the first monic irreducible of degree r.
Field parse_field(const std::string& text);

/// Polynomial over k in the given variables. Identifiers that are not variables
/// resolve to tower symbols (extension generators, rational-function variables, s, t).
Polynomial parse_polynomial(const std::string& text, const Field& k, const std::vector<std::string>& vars);

FieldElement parse_element(const std::string& text, const Field& k);

/// Comma-separated coordinates.
std::vector<FieldElement> parse_point(const std::string& text, const Field& k);

/// Split at separators outside parentheses and brackets; pieces are trimmed.
std::vector<std::string> split_top(const std::string& text, const std::string& separators);

/// Identifiers in texts that are not tower symbols of k, in natural order (x2 < x10).
std::vector<std::string> infer_variables(const std::vector<std::string>& texts, const Field& k);

/// Components separated by ',' or ';'. Variables are inferred when vars is empty.
std::vector<Polynomial> parse_system(const std::string& text, const Field& k, std::vector<std::string> vars = {});

/// `var: expr; var: expr` with expressions in k.
std::map<std::string, FieldElement> parse_seed(const std::string& text, const Field& k);

/// `0` or signed sums of `[n*]<a>` terms.
GwElement parse_gw(const std::string& text, const Field& k);

}  // namespace a1
