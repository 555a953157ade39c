#include "clusterqh/seeds.hpp"

#include <numeric>
#include <queue>

namespace cqh {

ExtMatrix::ExtMatrix(std::size_t n, std::size_t m, IntMatrix entries)
    : n_(n), m_(m), entries_(std::move(entries)) {
  if (n_ == 0) throw SeedError("rank must be at least 1");
  if (entries_.size() != n_ + m_) throw SeedError("extended matrix needs n + m rows");
  for (const auto& row : entries_) {
    if (row.size() != n_) throw SeedError("extended matrix needs n columns");
  }
  skew_symmetrizer(principal());
}

IntMatrix ExtMatrix::principal() const {
  return IntMatrix(entries_.begin(), entries_.begin() + static_cast<long>(n_));
}

IntMatrix ExtMatrix::coefficient_rows() const {
  return IntMatrix(entries_.begin() + static_cast<long>(n_), entries_.end());
}

IntRow ExtMatrix::column(std::size_t j) const {
  IntRow c;
  for (const auto& row : entries_) c.push_back(row.at(j));
  return c;
}

std::vector<long> skew_symmetrizer(const IntMatrix& b) {
  const std::size_t n = b.size();
  for (const auto& row : b) {
    if (row.size() != n) throw SeedError("principal part must be square");
  }
  std::vector<mpq_class> d(n, 0);
  std::vector<bool> seen(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::size_t> component;
    std::queue<std::size_t> q;
    q.push(root);
    seen[root] = true;
    d[root] = 1;
    while (!q.empty()) {
      std::size_t i = q.front();
      q.pop();
      component.push_back(i);
      for (std::size_t j = 0; j < n; ++j) {
        if (b[i][j] == 0 && b[j][i] == 0) continue;
        if (b[i][j] == 0 || b[j][i] == 0 || (b[i][j] > 0) == (b[j][i] > 0)) {
          throw SeedError("principal part is not skew-symmetrizable");
        }
        mpq_class dj = d[i] * b[i][j] / mpq_class(-b[j][i]);
        if (!seen[j]) {
          seen[j] = true;
          d[j] = dj;
          q.push(j);
        } else if (d[j] != dj) {
          throw SeedError("principal part is not skew-symmetrizable");
        }
      }
    }
    mpz_class den_lcm = 1;
    for (auto i : component) den_lcm = lcm(den_lcm, mpz_class(d[i].get_den()));
    mpz_class num_gcd = 0;
    for (auto i : component) {
      d[i] *= den_lcm;
      num_gcd = gcd(num_gcd, mpz_class(d[i].get_num()));
    }
    for (auto i : component) d[i] /= num_gcd;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (b[i][i] != 0) throw SeedError("principal part has a nonzero diagonal entry");
  }
  std::vector<long> out;
  for (const auto& x : d) out.push_back(x.get_num().get_si());
  return out;
}

ExtMatrix mutate_matrix(const ExtMatrix& b, std::size_t k) {
  if (k >= b.n()) throw SeedError("mutation direction out of range");
  IntMatrix e = b.entries();
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = 0; j < b.n(); ++j) {
      if (i == k || j == k) {
        e[i][j] = -b(i, j);
      } else {
        long bik = b(i, k), bkj = b(k, j);
        long prod = bik * bkj;
        if (prod > 0) e[i][j] = b(i, j) + (bik > 0 ? prod : -prod);
      }
    }
  }
  return ExtMatrix(b.n(), b.m(), std::move(e));
}

bool is_indecomposable(const IntMatrix& b) {
  const std::size_t n = b.size();
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      if (!seen[j] && (b[i][j] != 0 || b[j][i] != 0)) {
        seen[j] = true;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == n;
}

ExtMatrix btilde_from_quiver(std::size_t n, std::size_t m, const std::vector<Arrow>& arrows) {
  IntMatrix e = zero_matrix(n + m, n);
  for (const auto& a : arrows) {
    if (a.from >= n + m || a.to >= n + m) throw SeedError("arrow endpoint out of range");
    if (a.to < n) e[a.from][a.to] += a.mult;
    if (a.from < n) e[a.to][a.from] -= a.mult;
  }
  return ExtMatrix(n, m, std::move(e));
}

Seed Seed::initial(const ExtMatrix& b, std::vector<std::string> names) {
  Seed s;
  s.btilde = b;
  const std::size_t nv = b.n() + b.m();
  for (std::size_t i = 0; i < b.n(); ++i) s.cluster.push_back(LaurentPoly::var(nv, i));
  s.var_names = names.empty() ? default_var_names(b.n(), b.m()) : std::move(names);
  s.validate();
  return s;
}

void Seed::validate() const {
  if (cluster.size() != n()) throw SeedError("cluster size differs from rank");
  for (const auto& x : cluster) {
    if (x.nvars() != ambient_size()) throw SeedError("cluster variable lives in the wrong ambient");
    if (x.is_zero()) throw SeedError("cluster variable is zero");
  }
  if (!var_names.empty() && var_names.size() != ambient_size()) {
    throw SeedError("variable name count differs from n + m");
  }
}

CoefficientPair coefficient_pair(const Seed& seed, std::size_t k) {
  if (k >= seed.n()) throw SeedError("direction out of range");
  CoefficientPair p{FrozenMonomial::unit(seed.m()), FrozenMonomial::unit(seed.m())};
  for (std::size_t i = 0; i < seed.m(); ++i) {
    long b = seed.btilde(seed.n() + i, k);
    if (b > 0) p.plus.exps[i] = static_cast<int>(b);
    if (b < 0) p.minus.exps[i] = static_cast<int>(-b);
  }
  return p;
}

std::vector<CoefficientPair> coefficient_pairs(const Seed& seed) {
  std::vector<CoefficientPair> out;
  for (std::size_t k = 0; k < seed.n(); ++k) out.push_back(coefficient_pair(seed, k));
  return out;
}

namespace {

std::pair<LaurentPoly, LaurentPoly> exchange_terms_from(const IntMatrix& principal,
                                                        const CoefficientPair& p,
                                                        const std::vector<LaurentPoly>& cluster,
                                                        std::size_t k) {
  const std::size_t nv = cluster.front().nvars();
  const std::size_t num_mutable = nv - p.plus.size();
  LaurentPoly plus = embed_frozen(p.plus, num_mutable);
  LaurentPoly minus = embed_frozen(p.minus, num_mutable);
  for (std::size_t j = 0; j < cluster.size(); ++j) {
    long b = principal[j][k];
    if (b > 0) plus *= cluster[j].pow(static_cast<int>(b));
    if (b < 0) minus *= cluster[j].pow(static_cast<int>(-b));
  }
  return {plus, minus};
}

}  // namespace

std::pair<LaurentPoly, LaurentPoly> exchange_terms(const Seed& seed, std::size_t k) {
  return exchange_terms_from(seed.btilde.principal(), coefficient_pair(seed, k), seed.cluster, k);
}

Seed mutate_seed(const Seed& seed, std::size_t k) {
  if (k >= seed.n()) throw SeedError("mutation direction out of range");
  auto [plus, minus] = exchange_terms(seed, k);
  Seed out = seed;
  try {
    out.cluster[k] = exact_div(plus + minus, seed.cluster[k]);
  } catch (const NotDivisible& e) {
    throw NotDivisible("exchange relation in direction " + std::to_string(k) +
                       " is not exact: " + e.what());
  }
  out.btilde = mutate_matrix(seed.btilde, k);
  return out;
}

Seed mutate_along(const Seed& seed, const MutationWord& word) {
  Seed s = seed;
  for (std::size_t step = 0; step < word.size(); ++step) {
    try {
      s = mutate_seed(s, word[step]);
    } catch (const NotDivisible& e) {
      throw NotDivisible("step " + std::to_string(step) + ": " + e.what());
    }
  }
  return s;
}

std::vector<Fraction> hatted_from(const IntMatrix& principal, const std::vector<CoefficientPair>& coeffs,
                                  const std::vector<LaurentPoly>& cluster) {
  const std::size_t n = cluster.size();
  const std::size_t nv = cluster.front().nvars();
  std::vector<Fraction> y;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t num_mutable = nv - coeffs[j].plus.size();
    Fraction f{embed_frozen(coeffs[j].plus, num_mutable), embed_frozen(coeffs[j].minus, num_mutable)};
    for (std::size_t i = 0; i < n; ++i) {
      long b = principal[i][j];
      if (b > 0) f.num *= cluster[i].pow(static_cast<int>(b));
      if (b < 0) f.den *= cluster[i].pow(static_cast<int>(-b));
    }
    y.push_back(std::move(f));
  }
  return y;
}

std::vector<Fraction> hatted(const Seed& seed) {
  return hatted_from(seed.btilde.principal(), coefficient_pairs(seed), seed.cluster);
}

std::vector<Fraction> propagate_hatted(const std::vector<Fraction>& y, const IntMatrix& b,
                                       std::size_t k) {
  std::vector<Fraction> out;
  const Fraction one_plus = y[k] + Fraction::of(LaurentPoly::one(y[k].num.nvars()));
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (j == k) {
      out.push_back(y[k].inverse());
      continue;
    }
    long bkj = b[k][j];
    Fraction f = y[j];
    if (bkj > 0) f = f * y[k].pow(static_cast<int>(bkj));
    if (bkj != 0) f = f * one_plus.pow(static_cast<int>(-bkj));
    out.push_back(std::move(f));
  }
  return out;
}

bool hatted_tuples_equal(const std::vector<Fraction>& a, const std::vector<Fraction>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].num.nvars() != b[i].num.nvars() || !a[i].equals(b[i])) return false;
  }
  return true;
}

bool hatted_mutation_check(const Seed& seed, std::size_t k) {
  Seed next;
  try {
    next = mutate_seed(seed, k);
  } catch (const NotDivisible&) {
    return false;
  }
  return hatted_tuples_equal(hatted(next), propagate_hatted(hatted(seed), seed.btilde.principal(), k));
}

Seed opposite_seed(const Seed& seed) {
  IntMatrix e = seed.btilde.entries();
  for (auto& row : e) {
    for (auto& v : row) v = -v;
  }
  Seed out = seed;
  out.btilde = ExtMatrix(seed.n(), seed.m(), std::move(e));
  return out;
}

nlohmann::json to_json(const Seed& seed) {
  std::vector<std::string> names =
      seed.var_names.empty() ? default_var_names(seed.n(), seed.m()) : seed.var_names;
  nlohmann::json cluster = nlohmann::json::array();
  for (const auto& x : seed.cluster) cluster.push_back(to_json(x, names));
  return {{"n", seed.n()},
          {"m", seed.m()},
          {"btilde", seed.btilde.entries()},
          {"cluster", cluster},
          {"var_names", names}};
}

Seed seed_from_json(const nlohmann::json& j) {
  const auto n = j.at("n").get<std::size_t>();
  const auto m = j.at("m").get<std::size_t>();
  Seed s;
  s.btilde = ExtMatrix(n, m, j.at("btilde").get<IntMatrix>());
  if (j.contains("var_names")) s.var_names = j.at("var_names").get<std::vector<std::string>>();
  if (j.contains("cluster")) {
    for (const auto& x : j.at("cluster")) s.cluster.push_back(laurent_from_json(x));
  } else {
    for (std::size_t i = 0; i < n; ++i) s.cluster.push_back(LaurentPoly::var(n + m, i));
  }
  if (s.var_names.empty()) s.var_names = default_var_names(n, m);
  s.validate();
  return s;
}

std::vector<Arrow> arrows_from_json(const nlohmann::json& j) {
  std::vector<Arrow> arrows;
  for (const auto& a : j) {
    arrows.push_back({a.at("from").get<std::size_t>(), a.at("to").get<std::size_t>(),
                      a.value("mult", 1L)});
  }
  return arrows;
}

}  // namespace cqh
