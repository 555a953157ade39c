#include "clusterqh/grassmann.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "clusterqh/patterns.hpp"

namespace cqh {

GenericMatrixContext::GenericMatrixContext(int k, int n) : k_(k), n_(n) {
  if (k < 1 || n <= k) throw GrassmannError("need 1 <= k < n");
}

std::size_t GenericMatrixContext::num_x() const { return static_cast<std::size_t>(rows() * n_); }

std::size_t GenericMatrixContext::x_index(int r, int c) const {
  if (r < 1 || r > rows() || c < 1 || c > n_) throw GrassmannError("matrix entry out of range");
  return static_cast<std::size_t>((r - 1) * n_ + (c - 1));
}

std::vector<std::string> GenericMatrixContext::x_names() const {
  std::vector<std::string> out;
  for (int r = 1; r <= rows(); ++r) {
    for (int c = 1; c <= n_; ++c) out.push_back("x" + std::to_string(r) + "_" + std::to_string(c));
  }
  return out;
}

// Row i of the band holds columns i..min(i+k, n); since i + k <= n always,
// every row has exactly k+1 entries.
std::size_t GenericMatrixContext::num_y() const { return static_cast<std::size_t>(rows() * (k_ + 1)); }

std::size_t GenericMatrixContext::y_index(int i, int j) const {
  if (!in_band(i, j)) throw GrassmannError("band entry out of range");
  return static_cast<std::size_t>((i - 1) * (k_ + 1) + (j - i));
}

std::vector<std::string> GenericMatrixContext::y_names() const {
  std::vector<std::string> out;
  for (int i = 1; i <= rows(); ++i) {
    for (int j = i; j <= i + k_; ++j) out.push_back("y" + std::to_string(i) + "_" + std::to_string(j));
  }
  return out;
}

PluckerIndex reduce_plucker(const GenericMatrixContext& ctx, const std::vector<int>& s) {
  if (static_cast<int>(s.size()) != ctx.rows()) throw GrassmannError("Plucker index needs n-k entries");
  PluckerIndex out;
  for (int v : s) out.cols.push_back(((v - 1) % ctx.n() + ctx.n()) % ctx.n() + 1);
  int inversions = 0;
  for (std::size_t a = 0; a < out.cols.size(); ++a) {
    for (std::size_t b = a + 1; b < out.cols.size(); ++b) {
      if (out.cols[a] == out.cols[b]) {
        out.sign = 0;
        std::sort(out.cols.begin(), out.cols.end());
        return out;
      }
      if (out.cols[a] > out.cols[b]) ++inversions;
    }
  }
  std::sort(out.cols.begin(), out.cols.end());
  out.sign = inversions % 2 == 0 ? 1 : -1;
  return out;
}

bool is_frozen_plucker(const GenericMatrixContext& ctx, const std::vector<int>& cols) {
  const int n = ctx.n();
  std::vector<bool> in(static_cast<std::size_t>(n) + 1, false);
  for (int c : cols) in[static_cast<std::size_t>(c)] = true;
  for (int start = 1; start <= n; ++start) {
    bool ok = true;
    for (int t = 0; t < static_cast<int>(cols.size()) && ok; ++t) {
      ok = in[static_cast<std::size_t>((start - 1 + t) % n + 1)];
    }
    if (ok) return true;
  }
  return false;
}

namespace {

int permutation_sign(const std::vector<std::size_t>& p) {
  int inv = 0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = a + 1; b < p.size(); ++b) {
      if (p[a] > p[b]) ++inv;
    }
  }
  return inv % 2 == 0 ? 1 : -1;
}

// Leibniz expansion of a matrix whose entries are single variables or zero.
// var(r, c) returns the variable index or -1 for a structural zero.
template <class VarOf>
LaurentPoly variable_determinant(std::size_t size, std::size_t nvars, VarOf var) {
  LaurentPoly out(nvars);
  std::vector<std::size_t> p(size);
  std::iota(p.begin(), p.end(), 0);
  do {
    Exponents e(nvars, 0);
    bool zero = false;
    for (std::size_t r = 0; r < size && !zero; ++r) {
      long v = var(r, p[r]);
      if (v < 0) {
        zero = true;
      } else {
        ++e[static_cast<std::size_t>(v)];
      }
    }
    if (!zero) out.add_term(e, permutation_sign(p));
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<int> interval(int lo, int hi) {
  std::vector<int> out;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

void check_columns(const GenericMatrixContext& ctx, const std::vector<int>& cols) {
  for (int c : cols) {
    if (c < 1 || c > ctx.n()) throw GrassmannError("column index out of range");
  }
}

}  // namespace

LaurentPoly determinant(const std::vector<std::vector<LaurentPoly>>& m, std::size_t nvars) {
  const std::size_t size = m.size();
  for (const auto& row : m) {
    if (row.size() != size) throw DimensionMismatch("determinant needs a square matrix");
  }
  if (size == 0) return LaurentPoly::one(nvars);
  if (size > 20) throw DimensionMismatch("determinant expansion limited to 20 rows");
  // Laplace expansion along the top row, memoizing the minors of the lower
  // rows by their column mask.
  std::map<unsigned long, LaurentPoly> memo;
  auto minor = [&](auto&& self, std::size_t row, unsigned long mask) -> LaurentPoly {
    if (row == size) return LaurentPoly::one(nvars);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    LaurentPoly acc(nvars);
    int sign = 1;
    for (std::size_t c = 0; c < size; ++c) {
      if (!(mask & (1UL << c))) continue;
      const LaurentPoly& entry = m[row][c];
      if (!entry.is_zero()) {
        LaurentPoly sub = self(self, row + 1, mask & ~(1UL << c));
        if (!sub.is_zero()) {
          LaurentPoly term = entry * sub;
          acc += sign == 1 ? term : -term;
        }
      }
      sign = -sign;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return minor(minor, 0, (1UL << size) - 1);
}

LaurentPoly plucker(const GenericMatrixContext& ctx, const std::vector<int>& s) {
  PluckerIndex idx = reduce_plucker(ctx, s);
  if (idx.sign == 0) return LaurentPoly::zero(ctx.num_x());
  LaurentPoly d = variable_determinant(idx.cols.size(), ctx.num_x(), [&](std::size_t r, std::size_t c) {
    return static_cast<long>(ctx.x_index(static_cast<int>(r) + 1, idx.cols[c]));
  });
  return idx.sign == 1 ? d : -d;
}

LaurentPoly band_minor(const GenericMatrixContext& ctx, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
  if (rows.size() != cols.size()) throw GrassmannError("minor needs as many rows as columns");
  check_columns(ctx, cols);
  for (int r : rows) {
    if (r < 1 || r > ctx.rows()) throw GrassmannError("row index out of range");
  }
  return variable_determinant(rows.size(), ctx.num_y(), [&](std::size_t r, std::size_t c) {
    int i = rows[r], j = cols[c];
    return ctx.in_band(i, j) ? static_cast<long>(ctx.y_index(i, j)) : -1L;
  });
}

LaurentPoly f_star(const GenericMatrixContext& ctx, const std::vector<int>& s) {
  PluckerIndex idx = reduce_plucker(ctx, s);
  if (idx.sign == 0) return LaurentPoly::zero(ctx.num_y());
  LaurentPoly d = band_minor(ctx, interval(1, ctx.rows()), idx.cols);
  return idx.sign == 1 ? d : -d;
}

LaurentPoly g_star(const GenericMatrixContext& ctx, int i, int j) {
  if (!ctx.in_band(i, j)) throw GrassmannError("entry outside the band");
  std::vector<int> s = interval(i + ctx.k() + 1, ctx.n() + i - 1);
  s.push_back(j);
  return plucker(ctx, s);
}

LaurentPoly g_star_minor(const GenericMatrixContext& ctx, const std::vector<int>& rows,
                         const std::vector<int>& cols) {
  if (rows.size() != cols.size()) throw GrassmannError("minor needs as many rows as columns");
  check_columns(ctx, cols);
  std::vector<std::vector<LaurentPoly>> m;
  for (int r : rows) {
    if (r < 1 || r > ctx.rows()) throw GrassmannError("row index out of range");
    std::vector<LaurentPoly> row;
    for (int c : cols) row.push_back(ctx.in_band(r, c) ? g_star(ctx, r, c) : LaurentPoly::zero(ctx.num_x()));
    m.push_back(std::move(row));
  }
  return determinant(m, ctx.num_x());
}

std::string BandMinorLabel::name() const {
  std::ostringstream out;
  out << "Y";
  for (int r : rows) out << r;
  out << ",";
  for (int c : cols) out << c;
  return out.str();
}

std::vector<BandMinorLabel> band_frozen_labels(const GenericMatrixContext& ctx) {
  std::vector<BandMinorLabel> out;
  for (int i = 1; i <= ctx.rows(); ++i) out.push_back({{i}, {i}});
  for (int i = 1; i <= ctx.rows(); ++i) out.push_back({{i}, {i + ctx.k()}});
  for (int j = 2; j <= ctx.k(); ++j) out.push_back({interval(1, ctx.rows()), interval(j, j + ctx.rows() - 1)});
  return out;
}

bool is_frozen_band_label(const GenericMatrixContext& ctx, const BandMinorLabel& label) {
  auto frozen = band_frozen_labels(ctx);
  return std::find(frozen.begin(), frozen.end(), label) != frozen.end();
}

bool is_irreducible_band_minor(const GenericMatrixContext& ctx, const BandMinorLabel& label) {
  const auto& rows = label.rows;
  const auto& cols = label.cols;
  if (rows.empty() || rows.size() != cols.size()) return false;
  for (std::size_t t = 1; t < rows.size(); ++t) {
    if (rows[t] != rows[t - 1] + 1 || cols[t] <= cols[t - 1]) return false;
  }
  if (band_minor(ctx, rows, cols).is_zero()) return false;
  const int a = rows.front();
  const int k = ctx.k();
  for (std::size_t t = 1; t < rows.size(); ++t) {
    const int ti = static_cast<int>(t);
    // The first t rows miss the last columns, or the last rows miss the first t columns.
    if (cols[t] > a + ti - 1 + k) return false;
    if (cols[t - 1] < a + ti) return false;
  }
  return true;
}

namespace {

void column_subsets(int lo, int hi, std::size_t size, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (cur.size() == size) {
    out.push_back(cur);
    return;
  }
  for (int c = cur.empty() ? lo : cur.back() + 1; c <= hi; ++c) {
    cur.push_back(c);
    column_subsets(lo, hi, size, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> subsets(int lo, int hi, std::size_t size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  column_subsets(lo, hi, size, cur, out);
  return out;
}

std::vector<LaurentPoly> frozen_band_polys(const GenericMatrixContext& ctx) {
  std::vector<LaurentPoly> out;
  for (const auto& l : band_frozen_labels(ctx)) out.push_back(band_minor(ctx, l.rows, l.cols));
  return out;
}

}  // namespace

std::vector<BandMinorLabel> nonfrozen_irreducible_minors(const GenericMatrixContext& ctx) {
  std::vector<BandMinorLabel> out;
  for (int a = 1; a <= ctx.rows(); ++a) {
    for (int s = 1; a + s - 1 <= ctx.rows(); ++s) {
      for (const auto& cols : subsets(a, a + s - 1 + ctx.k(), static_cast<std::size_t>(s))) {
        BandMinorLabel label{interval(a, a + s - 1), cols};
        if (is_irreducible_band_minor(ctx, label) && !is_frozen_band_label(ctx, label)) out.push_back(label);
      }
    }
  }
  return out;
}

FStarFactor factor_fstar(const GenericMatrixContext& ctx, const std::vector<int>& s) {
  PluckerIndex idx = reduce_plucker(ctx, s);
  if (idx.sign == 0) throw NoFactorization("Plucker coordinate vanishes");
  if (is_frozen_plucker(ctx, idx.cols)) throw NoFactorization("Plucker coordinate is frozen");
  if (idx.sign != 1) throw NoFactorization("index is an odd permutation of its sorted form");
  LaurentPoly p = f_star(ctx, s);
  const auto frozen = band_frozen_labels(ctx);
  const int a = ctx.rows();

  // Single-entry frozen generators come first in the frozen list: the
  // diagonal, then the last band diagonal.
  Exponents content = p.min_exponents();
  FrozenMonomial c = FrozenMonomial::unit(frozen.size());
  Exponents divisor(ctx.num_y(), 0);
  for (int i = 1; i <= a; ++i) {
    std::size_t d = ctx.y_index(i, i), e = ctx.y_index(i, i + ctx.k());
    c.exps[static_cast<std::size_t>(i - 1)] = content[d];
    c.exps[static_cast<std::size_t>(a + i - 1)] = content[e];
    divisor[d] = content[d];
    divisor[e] = content[e];
  }
  LaurentPoly rest = exact_div(p, LaurentPoly::monomial(Monomial{divisor}));
  for (const auto& label : nonfrozen_irreducible_minors(ctx)) {
    if (band_minor(ctx, label.rows, label.cols) == rest) return {c, label};
  }
  throw NoFactorization("no irreducible row-solid minor matches the remaining factor");
}

std::optional<Exponents> factor_over(const LaurentPoly& p, const std::vector<LaurentPoly>& gens) {
  auto f = factor_over_signed(p, gens);
  if (!f || f->sign != 1) return std::nullopt;
  return f->exponents;
}

std::optional<SignedFactorization> factor_over_signed(const LaurentPoly& p, const std::vector<LaurentPoly>& gens) {
  if (p.is_zero()) return std::nullopt;
  Exponents e(gens.size(), 0);
  LaurentPoly rest = p;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].as_monomial() && gens[i].as_monomial()->is_unit()) continue;
    // Monomials divide everything in the Laurent ring, so only polynomial
    // quotients count as factors.
    while (auto q = try_exact_div(rest, gens[i])) {
      Exponents lo = q->min_exponents();
      if (std::any_of(lo.begin(), lo.end(), [](int x) { return x < 0; })) break;
      rest = *q;
      ++e[i];
    }
  }
  if (rest == LaurentPoly::one(p.nvars())) return SignedFactorization{1, e};
  if (rest == -LaurentPoly::one(p.nvars())) return SignedFactorization{-1, e};
  return std::nullopt;
}

FrozenMonomial c_value(const GenericMatrixContext& ctx, const std::vector<int>& s) {
  PluckerIndex idx = reduce_plucker(ctx, s);
  if (idx.sign == 0) throw GrassmannError("Plucker coordinate vanishes");
  if (!is_frozen_plucker(ctx, idx.cols)) return factor_fstar(ctx, idx.cols).c;
  auto e = factor_over(f_star(ctx, idx.cols), frozen_band_polys(ctx));
  if (!e) throw NoFactorization("frozen image is not a monomial in frozen band minors");
  return FrozenMonomial{*e};
}

bool flattoband_check(const GenericMatrixContext& ctx, int a, int s, const std::vector<int>& j) {
  if (s < 1 || a < 1 || a + s - 1 > ctx.rows()) throw GrassmannError("row interval out of range");
  if (static_cast<int>(j.size()) != s) throw GrassmannError("column set must have s entries");
  for (std::size_t t = 0; t < j.size(); ++t) {
    if (j[t] < a || j[t] > a + s - 1 + ctx.k()) throw GrassmannError("column outside the band window");
    if (t > 0 && j[t] <= j[t - 1]) throw GrassmannError("columns must be strictly increasing");
  }
  LaurentPoly lhs = g_star_minor(ctx, interval(a, a + s - 1), j);
  LaurentPoly rhs = LaurentPoly::one(ctx.num_x());
  for (int i = a; i <= a + s - 2; ++i) rhs *= plucker(ctx, interval(i + ctx.k() + 1, ctx.n() + i));
  std::vector<int> last = interval(a + ctx.k() + s, ctx.n() + a - 1);
  last.insert(last.end(), j.begin(), j.end());
  rhs *= plucker(ctx, last);
  return lhs == rhs;
}

std::vector<FlatToBandInstance> flattoband_instances(const GenericMatrixContext& ctx) {
  std::vector<FlatToBandInstance> out;
  for (int a = 1; a <= ctx.rows(); ++a) {
    for (int s = 1; a + s - 1 <= ctx.rows(); ++s) {
      for (auto& j : subsets(a, a + s - 1 + ctx.k(), static_cast<std::size_t>(s))) out.push_back({a, s, j});
    }
  }
  return out;
}

bool tropical_c_check(const GenericMatrixContext& ctx, const std::vector<int>& s, int i, int j, int k2,
                      int l) {
  if (!(i < j && j < k2 && k2 < l)) throw GrassmannError("need i < j < k < l");
  if (static_cast<int>(s.size()) + 2 != ctx.rows()) throw GrassmannError("S must have n-k-2 entries");
  auto with = [&](int p, int q) {
    std::vector<int> v = s;
    v.push_back(p);
    v.push_back(q);
    return v;
  };
  // A product of two c values, absent when either coordinate vanishes.
  auto term = [&](int p, int q, int r, int t) -> std::optional<FrozenMonomial> {
    auto u = with(p, q), v = with(r, t);
    if (reduce_plucker(ctx, u).sign == 0 || reduce_plucker(ctx, v).sign == 0) return std::nullopt;
    return c_value(ctx, u) * c_value(ctx, v);
  };
  auto lhs = term(i, k2, j, l);
  auto r1 = term(i, j, k2, l);
  auto r2 = term(j, k2, i, l);
  std::optional<FrozenMonomial> rhs;
  if (r1 && r2) {
    rhs = trop_add(*r1, *r2);
  } else {
    rhs = r1 ? r1 : r2;
  }
  if (!lhs || !rhs) return !lhs && !rhs;
  return *lhs == *rhs;
}

std::vector<ShortPluckerInstance> short_plucker_instances(const GenericMatrixContext& ctx) {
  std::vector<ShortPluckerInstance> out;
  if (ctx.rows() < 2) return out;
  for (const auto& s : subsets(1, ctx.n(), static_cast<std::size_t>(ctx.rows() - 2))) {
    std::vector<int> rest;
    for (int v = 1; v <= ctx.n(); ++v) {
      if (std::find(s.begin(), s.end(), v) == s.end()) rest.push_back(v);
    }
    for (const auto& q : subsets(0, static_cast<int>(rest.size()) - 1, 4)) {
      out.push_back({s, rest[static_cast<std::size_t>(q[0])], rest[static_cast<std::size_t>(q[1])],
                     rest[static_cast<std::size_t>(q[2])], rest[static_cast<std::size_t>(q[3])]});
    }
  }
  return out;
}

std::string plucker_name(const std::vector<int>& cols) {
  std::string out = "D";
  for (std::size_t t = 0; t < cols.size(); ++t) {
    if (t > 0 && (cols[t] >= 10 || cols[t - 1] >= 10)) out += "_";
    out += std::to_string(cols[t]);
  }
  return out;
}

std::optional<std::vector<int>> identify_plucker(const GenericMatrixContext& ctx, const LaurentPoly& p) {
  for (const auto& s : subsets(1, ctx.n(), static_cast<std::size_t>(ctx.rows()))) {
    if (plucker(ctx, s) == p) return s;
  }
  return std::nullopt;
}

namespace {

// Rectangles seed: the rectangle with i rows and j columns inside the
// (n-k) x k box gives the Plucker index [1, a-i] u [a-i+j+1, a+j].
std::vector<int> rectangle_label(int a, int i, int j) {
  std::vector<int> out = interval(1, a - i);
  auto tail = interval(a - i + j + 1, a + j);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

struct GrSide {
  std::vector<std::vector<int>> labels;
  ExtMatrix btilde;
};

GrSide pinned_gr_25() {
  GrSide g;
  g.labels = {{2, 3, 5}, {2, 4, 5}, {1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {1, 4, 5}, {1, 2, 5}};
  g.btilde = ExtMatrix(2, 5, {{0, 1}, {-1, 0}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}, {1, -1}});
  return g;
}

GrSide rectangles_seed(const GenericMatrixContext& ctx) {
  const int a = ctx.rows(), k = ctx.k();
  const std::size_t n = static_cast<std::size_t>((a - 1) * (k - 1));
  // Vertex numbering: mutable rectangles row-major, then the empty rectangle,
  // then the bottom row of the box, then its right column.
  auto id = [&](int i, int j) -> std::size_t {
    if (i == 0 && j == 0) return n;
    if (i < a && j < k) return static_cast<std::size_t>((i - 1) * (k - 1) + (j - 1));
    if (i == a) return n + static_cast<std::size_t>(j);
    return n + static_cast<std::size_t>(k + i);
  };
  GrSide g;
  g.labels.resize(static_cast<std::size_t>(ctx.n()) + n);
  g.labels[id(0, 0)] = interval(1, a);
  for (int i = 1; i <= a; ++i) {
    for (int j = 1; j <= k; ++j) g.labels[id(i, j)] = rectangle_label(a, i, j);
  }
  std::vector<Arrow> arrows{{id(0, 0), id(1, 1), 1}};
  for (int i = 1; i <= a; ++i) {
    for (int j = 1; j <= k; ++j) {
      if (i + 1 <= a) arrows.push_back({id(i, j), id(i + 1, j), 1});
      if (j + 1 <= k) arrows.push_back({id(i, j), id(i, j + 1), 1});
      if (i + 1 <= a && j + 1 <= k) arrows.push_back({id(i + 1, j + 1), id(i, j), 1});
    }
  }
  g.btilde = btilde_from_quiver(n, static_cast<std::size_t>(ctx.n()), arrows);
  return g;
}

std::vector<std::string> gr_names(const std::vector<std::vector<int>>& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels) out.push_back(plucker_name(l));
  return out;
}

std::vector<std::string> band_names(const std::vector<BandMinorLabel>& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels) out.push_back(l.name());
  return out;
}

}  // namespace

GrassmannFixture build_fixture(const GenericMatrixContext& ctx) {
  const bool pinned = ctx.k() == 2 && ctx.n() == 5;
  if (!pinned && (ctx.k() < 2 || ctx.rows() < 2 || ctx.n() > 6)) {
    throw UnsupportedFixture("fixtures need k >= 2, n - k >= 2 and n <= 6");
  }
  GrSide gr = pinned ? pinned_gr_25() : rectangles_seed(ctx);
  const std::size_t n = gr.btilde.n(), m = gr.btilde.m();

  GrassmannFixture fx{ctx, {}, {}, gr.labels, {}, {}, {}, {}, {}, {}, {}};
  for (const auto& l : gr.labels) fx.gr_realization.push_back(plucker(ctx, l));
  fx.gr_base = Seed::initial(gr.btilde, gr_names(gr.labels));

  // Band cluster: the irreducible minor of F* of each Grassmannian cluster variable.
  for (std::size_t i = 0; i < n; ++i) fx.band_labels.push_back(factor_fstar(ctx, gr.labels[i]).minor);
  for (const auto& l : band_frozen_labels(ctx)) fx.band_labels.push_back(l);
  for (const auto& l : fx.band_labels) fx.band_realization.push_back(band_minor(ctx, l.rows, l.cols));
  const std::size_t bm = fx.band_labels.size() - n;

  IntMatrix fm = zero_matrix(n + bm, n + m);
  for (std::size_t v = 0; v < n + m; ++v) {
    auto f = factor_over_signed(f_star(ctx, gr.labels[v]), fx.band_realization);
    if (!f) throw NoFactorization("F* image of " + plucker_name(gr.labels[v]) + " does not factor");
    for (std::size_t r = 0; r < n + bm; ++r) fm[r][v] = f->exponents[r];
    fx.fstar_signs.push_back(f->sign);
  }
  fx.fstar.matrix = fm;
  fx.fstar.src_n = n;
  fx.fstar.src_m = m;
  fx.fstar.dst_n = n;
  fx.fstar.dst_m = bm;
  fx.fstar.src_vars = fx.gr_base.var_names;
  fx.fstar.dst_vars = band_names(fx.band_labels);

  if (pinned) {
    fx.band_base = Seed::initial(
        ExtMatrix(2, 7, {{0, 1}, {-1, 0}, {0, 0}, {0, -1}, {-1, 0}, {0, -1}, {-1, 0}, {0, 0}, {1, 0}}),
        band_names(fx.band_labels));
  } else {
    fx.band_base = Seed::initial(ExtMatrix(n, bm, matmul(fm, gr.btilde.entries())), band_names(fx.band_labels));
  }

  IntMatrix gm = zero_matrix(n + m, n + bm);
  for (std::size_t v = 0; v < n + bm; ++v) {
    const auto& l = fx.band_labels[v];
    auto f = factor_over_signed(g_star_minor(ctx, l.rows, l.cols), fx.gr_realization);
    if (!f) throw NoFactorization("G* image of " + l.name() + " does not factor");
    for (std::size_t r = 0; r < n + m; ++r) gm[r][v] = f->exponents[r];
    fx.gstar_signs.push_back(f->sign);
  }
  fx.gstar.matrix = gm;
  fx.gstar.src_n = n;
  fx.gstar.src_m = bm;
  fx.gstar.dst_n = n;
  fx.gstar.dst_m = m;
  fx.gstar.src_vars = fx.fstar.dst_vars;
  fx.gstar.dst_vars = fx.fstar.src_vars;
  return fx;
}

namespace {

struct SideView {
  const Seed& base;
  const std::vector<LaurentPoly>& realization;
  std::function<std::optional<std::string>(const LaurentPoly&)> identify;
  std::function<LaurentPoly(const std::string&)> evaluate;
};

std::string power_text(const std::string& name, long e) {
  return e == 1 ? name : name + "^" + std::to_string(e);
}

std::vector<RelationCheck> relation_checks(const SideView& side, std::size_t max_depth, std::size_t nvars) {
  ExplorationGraph g = explore(side.base, max_depth, 200);
  const std::size_t n = side.base.n();
  std::vector<RelationCheck> out;
  // Cluster variables that are not single determinants are kept as their
  // realized polynomials and named by node and position.
  struct Factor {
    std::string name;
    LaurentPoly value;
  };
  auto factor = [&](const LaurentPoly& realized, const std::string& fallback) {
    auto name = side.identify(realized);
    if (name) return Factor{*name, side.evaluate(*name)};
    return Factor{fallback, realized};
  };
  for (const auto& edge : g.edges) {
    const Seed& s = g.nodes[edge.from].seed;
    const std::size_t k = edge.label;
    std::vector<Factor> vars;
    for (std::size_t i = 0; i < n; ++i) {
      vars.push_back(factor(substitute_exact(s.cluster[i], side.realization),
                            "v" + std::to_string(edge.from) + "_" + std::to_string(i)));
    }
    for (std::size_t f = n; f < s.ambient_size(); ++f) {
      vars.push_back({side.base.var_names[f], side.evaluate(side.base.var_names[f])});
    }
    LaurentPoly fresh = substitute_exact(mutate_seed(s, k).cluster[k], side.realization);
    Exponents lo = fresh.min_exponents();
    const bool polynomial = std::all_of(lo.begin(), lo.end(), [](int e) { return e >= 0; });
    Factor other = factor(fresh, "v" + std::to_string(edge.to) + "_" + std::to_string(k));

    LaurentPoly lhs = vars[k].value * other.value;
    LaurentPoly rhs(nvars);
    std::string text = vars[k].name + "*" + other.name + " =";
    for (int sign : {1, -1}) {
      LaurentPoly term = LaurentPoly::one(nvars);
      std::string ttext;
      for (std::size_t v = 0; v < s.ambient_size(); ++v) {
        long e = sign * s.btilde(v, k);
        if (e <= 0) continue;
        term *= vars[v].value.pow(static_cast<int>(e));
        ttext += (ttext.empty() ? "" : "*") + power_text(vars[v].name, e);
      }
      rhs += term;
      text += (sign == 1 ? " " : " + ") + (ttext.empty() ? std::string("1") : ttext);
    }
    out.push_back({text, polynomial && lhs == rhs});
  }
  return out;
}

}  // namespace

std::vector<RelationCheck> gr_relation_checks(const GrassmannFixture& fx, std::size_t max_depth) {
  const auto& ctx = fx.ctx;
  std::map<std::string, std::vector<int>> by_name;
  for (const auto& s : subsets(1, ctx.n(), static_cast<std::size_t>(ctx.rows()))) by_name[plucker_name(s)] = s;
  SideView side{fx.gr_base, fx.gr_realization,
                [&](const LaurentPoly& p) -> std::optional<std::string> {
                  auto s = identify_plucker(ctx, p);
                  if (!s) return std::nullopt;
                  return plucker_name(*s);
                },
                [&](const std::string& name) { return plucker(ctx, by_name.at(name)); }};
  return relation_checks(side, max_depth, ctx.num_x());
}

std::vector<RelationCheck> band_relation_checks(const GrassmannFixture& fx, std::size_t max_depth) {
  const auto& ctx = fx.ctx;
  std::map<std::string, BandMinorLabel> by_name;
  for (const auto& l : nonfrozen_irreducible_minors(ctx)) by_name[l.name()] = l;
  for (const auto& l : band_frozen_labels(ctx)) by_name[l.name()] = l;
  SideView side{fx.band_base, fx.band_realization,
                [&](const LaurentPoly& p) -> std::optional<std::string> {
                  for (const auto& [name, l] : by_name) {
                    if (band_minor(ctx, l.rows, l.cols) == p) return name;
                  }
                  return std::nullopt;
                },
                [&](const std::string& name) {
                  const auto& l = by_name.at(name);
                  return band_minor(ctx, l.rows, l.cols);
                }};
  return relation_checks(side, max_depth, ctx.num_y());
}

nlohmann::json to_json(const GrassmannFixture& fx) {
  nlohmann::json gr_labels = nlohmann::json::array(), band_labels = nlohmann::json::array();
  for (const auto& l : fx.gr_labels) gr_labels.push_back(plucker_name(l));
  for (const auto& l : fx.band_labels) band_labels.push_back({{"name", l.name()}, {"rows", l.rows}, {"cols", l.cols}});
  return {{"k", fx.ctx.k()},
          {"n", fx.ctx.n()},
          {"gr_seed", to_json(fx.gr_base)},
          {"band_seed", to_json(fx.band_base)},
          {"gr_labels", gr_labels},
          {"band_labels", band_labels},
          {"fstar", to_json(fx.fstar)},
          {"gstar", to_json(fx.gstar)},
          {"fstar_signs", fx.fstar_signs},
          {"gstar_signs", fx.gstar_signs}};
}

}  // namespace cqh
