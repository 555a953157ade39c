#include "clusterqh/lattice.hpp"

#include <stdexcept>
#include <utility>

namespace cqh {

BigMatrix to_big(const IntMatrix& a) {
  BigMatrix b;
  b.reserve(a.size());
  for (const auto& row : a) {
    BigRow r;
    for (long v : row) r.emplace_back(v);
    b.push_back(std::move(r));
  }
  return b;
}

IntMatrix to_small(const BigMatrix& a) {
  IntMatrix s;
  for (const auto& row : a) {
    IntRow r;
    for (const auto& v : row) {
      if (!v.fits_slong_p()) throw std::overflow_error("lattice entry exceeds machine range");
      r.push_back(v.get_si());
    }
    s.push_back(std::move(r));
  }
  return s;
}

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix zero_matrix(std::size_t rows, std::size_t cols) {
  return IntMatrix(rows, IntRow(cols, 0));
}

std::size_t num_cols(const IntMatrix& a) { return a.empty() ? 0 : a.front().size(); }

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t inner = num_cols(a);
  if (inner != b.size()) throw std::invalid_argument("matrix product dimension mismatch");
  const std::size_t cols = num_cols(b);
  IntMatrix c = zero_matrix(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t = zero_matrix(num_cols(a), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

IntMatrix subtract(const IntMatrix& a, const IntMatrix& b) {
  if (a.size() != b.size() || num_cols(a) != num_cols(b)) {
    throw std::invalid_argument("matrix difference dimension mismatch");
  }
  IntMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] -= b[i][j];
  }
  return c;
}

namespace {

void axpy_row(BigRow& dst, const BigRow& src, const mpz_class& q) {
  for (std::size_t j = 0; j < dst.size(); ++j) dst[j] -= q * src[j];
}

void negate_row(BigRow& r) {
  for (auto& v : r) v = -v;
}

// Floor division, so that reduced entries land in [0, pivot).
mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteForm hermite_normal_form(const BigMatrix& a, std::size_t cols) {
  HermiteForm f;
  f.h = a;
  const std::size_t rows = a.size();
  f.u.assign(rows, BigRow(rows, 0));
  for (std::size_t i = 0; i < rows; ++i) f.u[i][i] = 1;

  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    bool have_pivot = false;
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = row; i < rows; ++i) {
        if (f.h[i][col] == 0) continue;
        if (best == rows || abs(f.h[i][col]) < abs(f.h[best][col])) best = i;
      }
      if (best == rows) break;
      have_pivot = true;
      std::swap(f.h[row], f.h[best]);
      std::swap(f.u[row], f.u[best]);
      bool cleared = true;
      for (std::size_t i = row + 1; i < rows; ++i) {
        if (f.h[i][col] == 0) continue;
        mpz_class q = f.h[i][col] / f.h[row][col];
        axpy_row(f.h[i], f.h[row], q);
        axpy_row(f.u[i], f.u[row], q);
        if (f.h[i][col] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (!have_pivot) continue;
    if (f.h[row][col] < 0) {
      negate_row(f.h[row]);
      negate_row(f.u[row]);
    }
    for (std::size_t i = 0; i < row; ++i) {
      mpz_class q = floor_div(f.h[i][col], f.h[row][col]);
      if (q == 0) continue;
      axpy_row(f.h[i], f.h[row], q);
      axpy_row(f.u[i], f.u[row], q);
    }
    f.pivot_cols.push_back(col);
    ++row;
  }
  f.rank = row;
  return f;
}

std::size_t integer_rank(const IntMatrix& a) {
  return hermite_normal_form(to_big(a), num_cols(a)).rank;
}

std::optional<IntRow> solve_row_combination(const IntMatrix& a, const IntRow& v) {
  const std::size_t cols = v.size();
  if (a.empty()) {
    for (long x : v) {
      if (x != 0) return std::nullopt;
    }
    return IntRow{};
  }
  if (num_cols(a) != cols) throw std::invalid_argument("row length mismatch");
  HermiteForm f = hermite_normal_form(to_big(a), cols);
  BigRow rem(v.begin(), v.end());
  BigRow coeffs(a.size(), 0);  // combination of rows of H
  for (std::size_t r = 0; r < f.rank; ++r) {
    std::size_t c = f.pivot_cols[r];
    if (rem[c] == 0) continue;
    if (!mpz_divisible_p(rem[c].get_mpz_t(), f.h[r][c].get_mpz_t())) return std::nullopt;
    mpz_class q = rem[c] / f.h[r][c];
    axpy_row(rem, f.h[r], q);
    coeffs[r] = q;
  }
  for (const auto& x : rem) {
    if (x != 0) return std::nullopt;
  }
  // v = coeffs * H = coeffs * U * A.
  BigRow x(a.size(), 0);
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (coeffs[r] == 0) continue;
    for (std::size_t j = 0; j < a.size(); ++j) x[j] += coeffs[r] * f.u[r][j];
  }
  return to_small(BigMatrix{x}).front();
}

bool in_rational_row_span(const IntMatrix& a, const IntRow& v) {
  IntMatrix extended = a;
  extended.push_back(v);
  return integer_rank(extended) == integer_rank(a);
}

IntMatrix left_kernel(const IntMatrix& a) {
  if (a.empty()) return {};
  HermiteForm f = hermite_normal_form(to_big(a), num_cols(a));
  BigMatrix basis(f.u.begin() + static_cast<long>(f.rank), f.u.end());
  // Bring the basis into Hermite form as well, for a canonical answer.
  HermiteForm canon = hermite_normal_form(basis, a.size());
  canon.h.resize(canon.rank);
  return to_small(canon.h);
}

bool same_row_lattice(const IntMatrix& a, const IntMatrix& b, std::size_t cols) {
  HermiteForm fa = hermite_normal_form(to_big(a), cols);
  HermiteForm fb = hermite_normal_form(to_big(b), cols);
  if (fa.rank != fb.rank) return false;
  for (std::size_t r = 0; r < fa.rank; ++r) {
    if (fa.h[r] != fb.h[r]) return false;
  }
  return true;
}

}  // namespace cqh
