#include "clusterqh/quasihom.hpp"

#include <map>

namespace cqh {

MonomialMap MonomialMap::identity(std::size_t n, std::size_t m) {
  MonomialMap M;
  M.matrix = identity_matrix(n + m);
  M.src_n = M.dst_n = n;
  M.src_m = M.dst_m = m;
  return M;
}

bool MonomialMap::preserves_coefficients() const {
  for (std::size_t i = 0; i < dst_n; ++i) {
    for (std::size_t j = src_n; j < src_size(); ++j) {
      if (matrix[i][j] != 0) return false;
    }
  }
  return true;
}

void MonomialMap::validate() const {
  if (matrix.size() != dst_size()) throw DimensionMismatch("monomial map needs one row per target variable");
  for (const auto& row : matrix) {
    if (row.size() != src_size()) throw DimensionMismatch("monomial map needs one column per source variable");
  }
}

MonomialMap compose(const MonomialMap& second, const MonomialMap& first) {
  if (second.src_n != first.dst_n || second.src_m != first.dst_m) {
    throw DimensionMismatch("monomial maps are not composable");
  }
  MonomialMap M;
  M.matrix = matmul(second.matrix, first.matrix);
  M.src_n = first.src_n;
  M.src_m = first.src_m;
  M.dst_n = second.dst_n;
  M.dst_m = second.dst_m;
  M.src_vars = first.src_vars;
  M.dst_vars = second.dst_vars;
  return M;
}

LaurentPoly apply_map(const MonomialMap& M, const LaurentPoly& f) {
  if (f.nvars() != M.src_size()) throw DimensionMismatch("polynomial is not in the source ambient");
  const std::size_t rows = M.dst_size();
  LaurentPoly out(rows);
  Exponents img(rows);
  for (const auto& [e, c] : f.terms()) {
    for (std::size_t i = 0; i < rows; ++i) {
      long s = 0;
      for (std::size_t j = 0; j < e.size(); ++j) s += M.matrix[i][j] * e[j];
      img[i] = static_cast<int>(s);
    }
    out.add_term(img, c);
  }
  return out;
}

FrozenMonomial apply_map(const MonomialMap& M, const FrozenMonomial& q) {
  if (q.size() != M.src_m) throw DimensionMismatch("frozen monomial is not in the source group");
  FrozenMonomial out = FrozenMonomial::unit(M.dst_m);
  for (std::size_t i = 0; i < M.dst_m; ++i) {
    long s = 0;
    for (std::size_t j = 0; j < M.src_m; ++j) s += M.matrix[M.dst_n + i][M.src_n + j] * q.exps[j];
    out.exps[i] = static_cast<int>(s);
  }
  return out;
}

SeedLike image_seed(const MonomialMap& M, const SeedLike& seed) {
  if (!M.preserves_coefficients()) throw DimensionMismatch("map does not preserve coefficients");
  SeedLike out;
  out.b = seed.b;
  out.num_mutable = M.dst_n;
  for (const auto& p : seed.coeffs) out.coeffs.push_back({apply_map(M, p.plus), apply_map(M, p.minus)});
  for (const auto& x : seed.cluster) out.cluster.push_back(apply_map(M, x));
  return out;
}

SeedLike image_seed(const MonomialMap& M, const Seed& seed) {
  return image_seed(M, as_seed_like(seed));
}

nlohmann::json QhReport::to_json() const {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& x : witnesses) {
    if (x) {
      w.push_back(x->exps);
    } else {
      w.push_back(nullptr);
    }
  }
  return {{"coefficient_preserving", coefficient_preserving},
          {"principal_equal", principal_equal},
          {"matrix_identity", matrix_identity},
          {"proportionality_witnesses", w},
          {"verdict", verdict},
          {"failure", failure}};
}

QhReport verify_qh_report(const MonomialMap& M, const Seed& src, const Seed& dst) {
  QhReport r;
  M.validate();
  if (M.src_n != src.n() || M.src_m != src.m() || M.dst_n != dst.n() || M.dst_m != dst.m()) {
    r.failure = "map dimensions do not match the seeds";
    return r;
  }
  r.coefficient_preserving = M.preserves_coefficients();
  r.principal_equal = src.btilde.principal() == dst.btilde.principal();
  r.matrix_identity = matmul(M.matrix, src.btilde.entries()) == dst.btilde.entries();
  bool all_prop = true;
  for (std::size_t i = 0; i < src.n(); ++i) {
    r.witnesses.push_back(frozen_ratio(apply_map(M, src.cluster[i]), dst.cluster[i], dst.n()));
    if (!r.witnesses.back()) all_prop = false;
  }
  r.verdict = r.coefficient_preserving && r.principal_equal && r.matrix_identity && all_prop;
  if (!r.coefficient_preserving) {
    r.failure = "frozen variables are not sent to frozen monomials";
  } else if (!r.principal_equal) {
    r.failure = "principal parts differ";
  } else if (!r.matrix_identity) {
    r.failure = "M * Btilde(src) differs from Btilde(dst)";
  } else if (!all_prop) {
    r.failure = "some image cluster variable is not proportional to its target";
  }
  return r;
}

bool verify_qh(const MonomialMap& M, const Seed& src, const Seed& dst) {
  return verify_qh_report(M, src, dst).verdict;
}

ConstructResult construct_qh_detailed(const ExtMatrix& src, const ExtMatrix& dst) {
  if (src.principal() != dst.principal()) throw PrincipalMismatch("principal parts differ");
  const std::size_t n = src.n();
  ConstructResult res;
  res.rational_solvable = true;
  MonomialMap M;
  M.src_n = M.dst_n = n;
  M.src_m = src.m();
  M.dst_m = dst.m();
  M.matrix = zero_matrix(M.dst_size(), M.src_size());
  for (std::size_t i = 0; i < n; ++i) M.matrix[i][i] = 1;
  const IntMatrix& rows = src.entries();
  const IntMatrix coeff_rows = src.coefficient_rows();
  bool ok = true;
  for (std::size_t r = 0; r < dst.m(); ++r) {
    const IntRow& target = dst.entries()[n + r];
    if (!in_rational_row_span(rows, target)) res.rational_solvable = false;
    // Solutions that leave the mutable variables alone are preferred.
    std::optional<IntRow> x;
    if (!coeff_rows.empty()) {
      if (auto y = solve_row_combination(coeff_rows, target)) {
        x = IntRow(n, 0);
        x->insert(x->end(), y->begin(), y->end());
      }
    }
    if (!x) x = solve_row_combination(rows, target);
    if (!x) {
      if (!res.failing_row) res.failing_row = r;
      ok = false;
      continue;
    }
    M.matrix[n + r] = *x;
  }
  if (ok) res.map = std::move(M);
  return res;
}

std::optional<MonomialMap> construct_qh(const ExtMatrix& src, const ExtMatrix& dst) {
  return construct_qh_detailed(src, dst).map;
}

FrozenMonomial NormalizationMap::operator()(const LaurentPoly& f) const {
  return tropicalize(apply_map(M_, f), M_.dst_n);
}

FrozenMonomial NormalizationMap::operator()(const Fraction& f) const {
  return (*this)(f.num) / (*this)(f.den);
}

NormalizationMap normalization_map(const MonomialMap& M) {
  if (!M.preserves_coefficients()) throw DimensionMismatch("map does not preserve coefficients");
  return NormalizationMap(M);
}

std::vector<FrozenMonomial> transported_y(const MonomialMap& M, const Seed& seed) {
  NormalizationMap c = normalization_map(M);
  std::vector<FrozenMonomial> out;
  for (const auto& y : hatted(seed)) out.push_back(c(y));
  return out;
}

std::optional<Grading> proportional(const MonomialMap& M1, const MonomialMap& M2, const ExtMatrix& b) {
  if (M1.matrix.size() != M2.matrix.size() || M1.dst_n != M2.dst_n) return std::nullopt;
  IntMatrix G = subtract(M1.matrix, M2.matrix);
  for (std::size_t i = 0; i < M1.dst_n; ++i) {
    for (long v : G[i]) {
      if (v != 0) return std::nullopt;
    }
  }
  IntMatrix bottom(G.begin() + static_cast<long>(M1.dst_n), G.end());
  IntMatrix prod = matmul(bottom, b.entries());
  for (const auto& row : prod) {
    for (long v : row) {
      if (v != 0) return std::nullopt;
    }
  }
  return Grading{bottom};
}

IntMatrix grading_space(const ExtMatrix& b) { return left_kernel(b.entries()); }

bool quasi_inverse_check(const MonomialMap& M, const MonomialMap& W, const Seed& src) {
  if (!W.preserves_coefficients() || !M.preserves_coefficients()) return false;
  if (W.src_n != M.dst_n || W.src_m != M.dst_m || W.dst_n != M.src_n || W.dst_m != M.src_m) {
    return false;
  }
  MonomialMap C = compose(W, M);
  auto proportional_to_self = [&](const LaurentPoly& x) {
    return frozen_ratio(apply_map(C, x), x, src.n()).has_value();
  };
  for (const auto& x : src.cluster) {
    if (!proportional_to_self(x)) return false;
  }
  for (std::size_t k = 0; k < src.n(); ++k) {
    Seed nb = mutate_seed(src, k);
    if (!proportional_to_self(nb.cluster[k])) return false;
  }
  return true;
}

std::string to_string(NerveVerdict v) {
  switch (v) {
    case NerveVerdict::qh_to_E:
      return "qh_to_E";
    case NerveVerdict::qh_to_E_opp:
      return "qh_to_E_opp";
    case NerveVerdict::fail:
      return "fail";
  }
  return "fail";
}

NerveVerdict check_on_nerve(const MonomialMap& M, const Nerve& nerve, const Seed& src_base,
                            const Seed& dst_base) {
  const std::size_t n = src_base.n();
  if (dst_base.n() != n) throw DimensionMismatch("patterns have different ranks");
  if (!validate_nerve(nerve, n)) throw InvalidNerve("nerve is disconnected or misses a label");
  if (!is_indecomposable(dst_base.btilde.principal())) {
    throw DecomposableTarget("target exchange matrix is decomposable");
  }

  std::map<MutationWord, std::pair<Seed, Seed>> cache;
  auto seeds_at = [&](const MutationWord& w) -> const std::pair<Seed, Seed>& {
    auto it = cache.find(w);
    if (it == cache.end()) {
      it = cache.emplace(w, std::make_pair(mutate_along(src_base, w), mutate_along(dst_base, w))).first;
    }
    return it->second;
  };
  auto prop = [&](const LaurentPoly& a, const LaurentPoly& b) {
    return frozen_ratio(a, b, dst_base.n()).has_value();
  };

  std::optional<NerveVerdict> verdict;
  for (const auto& edge : nerve.edges) {
    const std::size_t k = edge.label;
    for (const auto& v : {edge.vertex, edge.other()}) {
      const auto& [s, d] = seeds_at(v);
      if (!prop(apply_map(M, s.cluster[k]), d.cluster[k])) return NerveVerdict::fail;
    }
    const auto& [s, d] = seeds_at(edge.vertex);
    auto [sp, sm] = exchange_terms(s, k);
    auto [dp, dm] = exchange_terms(d, k);
    LaurentPoly ip = apply_map(M, sp), im = apply_map(M, sm);
    NerveVerdict here;
    if (prop(ip, dp) && prop(im, dm) && s.btilde.principal() == d.btilde.principal()) {
      here = NerveVerdict::qh_to_E;
    } else if (prop(ip, dm) && prop(im, dp) &&
               opposite_seed(s).btilde.principal() == d.btilde.principal()) {
      here = NerveVerdict::qh_to_E_opp;
    } else {
      return NerveVerdict::fail;
    }
    if (verdict && *verdict != here) return NerveVerdict::fail;
    verdict = here;
  }
  return verdict.value_or(NerveVerdict::fail);
}

nlohmann::json to_json(const MonomialMap& M) {
  return {{"matrix", M.matrix},
          {"src_vars", M.src_vars},
          {"dst_vars", M.dst_vars},
          {"src_n", M.src_n},
          {"dst_n", M.dst_n}};
}

MonomialMap monomial_map_from_json(const nlohmann::json& j, std::size_t src_n, std::size_t dst_n) {
  MonomialMap M;
  M.matrix = j.at("matrix").get<IntMatrix>();
  if (j.contains("src_vars")) M.src_vars = j.at("src_vars").get<std::vector<std::string>>();
  if (j.contains("dst_vars")) M.dst_vars = j.at("dst_vars").get<std::vector<std::string>>();
  M.src_n = j.value("src_n", src_n);
  M.dst_n = j.value("dst_n", dst_n);
  const std::size_t cols = num_cols(M.matrix);
  if (cols < M.src_n || M.matrix.size() < M.dst_n) throw DimensionMismatch("map smaller than its rank");
  M.src_m = cols - M.src_n;
  M.dst_m = M.matrix.size() - M.dst_n;
  M.validate();
  return M;
}

}  // namespace cqh
