#pragma once

// Dense linear algebra over F_q, and Smith normal form over Z.

#include <cstdint>
#include <optional>
#include <vector>

#include "btq/algebra.hpp"

namespace btq {

using FqVector = std::vector<FieldElement>;
using FqMatrix = std::vector<FqVector>;

// Solutions x of W x = R lam for a parameter vector lam. They exist iff
// conditions * lam = 0; then x = particular * lam + span(kernel).
struct ParametricSolution {
  FqMatrix conditions;  // rows of length m
  FqMatrix particular;  // n rows of length m
  std::vector<FqVector> kernel;
};

// W has n columns, R has m columns, and both have the same number of rows.
ParametricSolution solve_parametric(const Field& field, const FqMatrix& w, const FqMatrix& r,
                                    std::size_t n, std::size_t m);

FqVector apply(const Field& field, const FqMatrix& a, const FqVector& x);

// Coordinates of v with respect to independent vectors, if v lies in their span.
std::optional<FqVector> coordinates(const Field& field, const std::vector<FqVector>& basis,
                                    const FqVector& v);

// Residue vector of f modulo a nonconstant modulus: deg(modulus) coefficients.
FqVector residue_coordinates(const Polynomial& f, const Polynomial& modulus);

// Diagonal of the Smith normal form (all entries, zeros included, length
// min(rows, cols)).
std::vector<std::int64_t> smith_diagonal(std::vector<std::vector<std::int64_t>> a);

}  // namespace btq
