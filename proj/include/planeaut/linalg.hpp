#pragma once

#include <vector>

#include "planeaut/field.hpp"

namespace pa {

using Matrix = std::vector<std::vector<Scalar>>;

// Reduced row echelon form in place; zero rows dropped. Returns pivot columns.
std::vector<size_t> rref(Matrix& M, size_t cols);

// Basis of {v : M v = 0}, one vector per free column.
std::vector<std::vector<Scalar>> nullspace(Matrix M, size_t cols, const Field& f);

// Some v with M v = b, or nothing.
bool solve_linear(Matrix M, const std::vector<Scalar>& b, size_t cols, std::vector<Scalar>& out);

}  // namespace pa
