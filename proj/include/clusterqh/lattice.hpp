#pragma once

// Integer lattice algorithms on small dense matrices with exact big-integer entries.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

namespace cqh {

using IntRow = std::vector<long>;
using IntMatrix = std::vector<IntRow>;
using BigRow = std::vector<mpz_class>;
using BigMatrix = std::vector<BigRow>;

BigMatrix to_big(const IntMatrix& a);
IntMatrix to_small(const BigMatrix& a);  // throws std::overflow_error if an entry does not fit

IntMatrix identity_matrix(std::size_t n);
IntMatrix zero_matrix(std::size_t rows, std::size_t cols);
IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& a);
IntMatrix subtract(const IntMatrix& a, const IntMatrix& b);
std::size_t num_cols(const IntMatrix& a);

// Row-style Hermite normal form H = U * A with U unimodular. Pivots are
// positive and entries above a pivot are reduced into [0, pivot).
struct HermiteForm {
  BigMatrix h;
  BigMatrix u;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;  // pivot column of row i, for i < rank
};

HermiteForm hermite_normal_form(const BigMatrix& a, std::size_t cols);

std::size_t integer_rank(const IntMatrix& a);

// Coefficients x with x * A == v if v lies in the integer row span of A.
std::optional<IntRow> solve_row_combination(const IntMatrix& a, const IntRow& v);

// Whether v lies in the rational row span of A.
bool in_rational_row_span(const IntMatrix& a, const IntRow& v);

// Basis of { v : v * A == 0 } over the integers.
IntMatrix left_kernel(const IntMatrix& a);

// Whether the integer row spans of A and B coincide (rows of width `cols`).
bool same_row_lattice(const IntMatrix& a, const IntMatrix& b, std::size_t cols);

}  // namespace cqh
