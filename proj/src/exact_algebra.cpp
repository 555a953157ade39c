#include "clusterqh/exact_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cqh {

bool GradedLexGreater::operator()(const Exponents& a, const Exponents& b) const {
  long da = std::accumulate(a.begin(), a.end(), 0L);
  long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da > db;
  return a > b;
}

Monomial Monomial::var(std::size_t nvars, std::size_t i, int power) {
  Monomial m = unit(nvars);
  m.exps.at(i) = power;
  return m;
}

bool Monomial::is_unit() const {
  return std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (o.nvars() != nvars()) throw DimensionMismatch("monomial sizes differ");
  Monomial r = *this;
  for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] += o.exps[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const { return *this * o.inverse(); }

Monomial Monomial::inverse() const { return pow(-1); }

Monomial Monomial::pow(int k) const {
  Monomial r = *this;
  for (int& e : r.exps) e *= k;
  return r;
}

FrozenMonomial FrozenMonomial::gen(std::size_t m, std::size_t i, int power) {
  FrozenMonomial q = unit(m);
  q.exps.at(i) = power;
  return q;
}

bool FrozenMonomial::is_unit() const {
  return std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
}

FrozenMonomial FrozenMonomial::operator*(const FrozenMonomial& o) const {
  if (o.size() != size()) throw DimensionMismatch("frozen monomial sizes differ");
  FrozenMonomial r = *this;
  for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] += o.exps[i];
  return r;
}

FrozenMonomial FrozenMonomial::operator/(const FrozenMonomial& o) const {
  return *this * o.inverse();
}

FrozenMonomial FrozenMonomial::inverse() const { return pow(-1); }

FrozenMonomial FrozenMonomial::pow(int k) const {
  FrozenMonomial r = *this;
  for (int& e : r.exps) e *= k;
  return r;
}

FrozenMonomial trop_add(const FrozenMonomial& a, const FrozenMonomial& b) {
  if (a.size() != b.size()) throw DimensionMismatch("frozen monomial sizes differ");
  FrozenMonomial r = a;
  for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] = std::min(a.exps[i], b.exps[i]);
  return r;
}

LaurentPoly LaurentPoly::constant(std::size_t nvars, const mpz_class& c) {
  LaurentPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

LaurentPoly LaurentPoly::var(std::size_t nvars, std::size_t i, int power) {
  return monomial(Monomial::var(nvars, i, power));
}

LaurentPoly LaurentPoly::monomial(const Monomial& m, const mpz_class& c) {
  LaurentPoly p(m.nvars());
  p.add_term(m.exps, c);
  return p;
}

void LaurentPoly::add_term(const Exponents& e, const mpz_class& c) {
  if (e.size() != nvars_) throw DimensionMismatch("term has wrong number of exponents");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::optional<Monomial> LaurentPoly::as_monomial() const {
  if (terms_.size() != 1 || terms_.begin()->second != 1) return std::nullopt;
  return Monomial{terms_.begin()->first};
}

bool LaurentPoly::all_coefficients_positive() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return sgn(t.second) > 0; });
}

void LaurentPoly::check_same(const LaurentPoly& o) const {
  if (o.nvars_ != nvars_) {
    throw DimensionMismatch("ambient sizes differ: " + std::to_string(nvars_) + " vs " +
                            std::to_string(o.nvars_));
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  check_same(o);
  LaurentPoly r(nvars_);
  if (terms_.size() * o.terms_.size() < 64) {
    Exponents e(nvars_);
    for (const auto& [ea, ca] : terms_) {
      for (const auto& [eb, cb] : o.terms_) {
        for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  // Very large products are split along the left factor so the pairwise
  // buffer below stays bounded.
  constexpr std::size_t kMaxPairs = std::size_t{1} << 21;
  if (terms_.size() > 1 && terms_.size() * o.terms_.size() > kMaxPairs) {
    const std::size_t rows = std::max<std::size_t>(1, kMaxPairs / o.terms_.size());
    LaurentPoly block(nvars_);
    for (auto it = terms_.begin(); it != terms_.end();) {
      block.terms_.clear();
      for (std::size_t i = 0; i < rows && it != terms_.end(); ++i, ++it) block.terms_.emplace_hint(block.terms_.end(), *it);
      r += block * o;
    }
    return r;
  }
  // Large products: collect all pairwise terms, sort once, merge equal
  // exponents and append in order.
  struct Product {
    long degree;
    Exponents e;
    const mpz_class* a;
    const mpz_class* b;
  };
  std::vector<Product> prods;
  prods.reserve(terms_.size() * o.terms_.size());
  for (const auto& ta : terms_) {
    for (const auto& tb : o.terms_) {
      Exponents e(nvars_);
      long d = 0;
      for (std::size_t i = 0; i < nvars_; ++i) {
        e[i] = ta.first[i] + tb.first[i];
        d += e[i];
      }
      prods.push_back({d, std::move(e), &ta.second, &tb.second});
    }
  }
  std::sort(prods.begin(), prods.end(), [](const Product& x, const Product& y) {
    return x.degree != y.degree ? x.degree > y.degree : x.e > y.e;
  });
  mpz_class acc;
  for (std::size_t i = 0; i < prods.size();) {
    std::size_t j = i;
    acc = 0;
    while (j < prods.size() && prods[j].e == prods[i].e) {
      mpz_addmul(acc.get_mpz_t(), prods[j].a->get_mpz_t(), prods[j].b->get_mpz_t());
      ++j;
    }
    if (acc != 0) r.terms_.emplace_hint(r.terms_.end(), std::move(prods[i].e), acc);
    i = j;
  }
  return r;
}

LaurentPoly LaurentPoly::operator*(const Monomial& m) const {
  if (m.nvars() != nvars_) throw DimensionMismatch("monomial has wrong ambient size");
  LaurentPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents s = e;
    for (std::size_t i = 0; i < nvars_; ++i) s[i] += m.exps[i];
    r.terms_.emplace(std::move(s), c);
  }
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  return nvars_ == o.nvars_ && terms_ == o.terms_;
}

LaurentPoly LaurentPoly::pow(int k) const {
  if (k < 0) {
    auto m = as_monomial();
    if (!m) throw NotDivisible("negative power of a non-monomial");
    return monomial(m->pow(k));
  }
  LaurentPoly result = one(nvars_);
  LaurentPoly base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

Exponents LaurentPoly::min_exponents() const {
  Exponents lo(nvars_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) lo[i] = first ? e[i] : std::min(lo[i], e[i]);
    first = false;
  }
  return lo;
}

Exponents LaurentPoly::max_exponents() const {
  Exponents hi(nvars_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) hi[i] = first ? e[i] : std::max(hi[i], e[i]);
    first = false;
  }
  return hi;
}

std::string LaurentPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1) {
      out << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (wrote) out << "*";
      out << (i < names.size() ? names[i] : "v" + std::to_string(i));
      if (e[i] != 1) out << "^" << e[i];
      wrote = true;
    }
    if (!wrote) out << "1";
  }
  return out.str();
}

LaurentPoly add(const LaurentPoly& f, const LaurentPoly& g) { return f + g; }
LaurentPoly mul(const LaurentPoly& f, const LaurentPoly& g) { return f * g; }

LaurentPoly exact_div(const LaurentPoly& f, const LaurentPoly& g) {
  if (g.is_zero()) throw NotDivisible("division by zero polynomial");
  if (f.nvars() != g.nvars()) throw DimensionMismatch("ambient sizes differ in division");
  const std::size_t nv = f.nvars();
  LaurentPoly q(nv);
  if (f.is_zero()) return q;

  // Every quotient exponent lies in a box fixed by the per-variable degree
  // ranges of f and g; leaving it proves that no quotient exists.
  Exponents lo = f.min_exponents(), hi = f.max_exponents();
  Exponents glo = g.min_exponents(), ghi = g.max_exponents();
  for (std::size_t i = 0; i < nv; ++i) {
    lo[i] -= glo[i];
    hi[i] -= ghi[i];
    if (lo[i] > hi[i]) throw NotDivisible("degree ranges incompatible");
  }

  const Exponents& lg = g.leading_exponents();
  const mpz_class& lc = g.leading_coefficient();
  LaurentPoly r = f;
  Exponents t(nv);
  while (!r.is_zero()) {
    const Exponents& lr = r.leading_exponents();
    for (std::size_t i = 0; i < nv; ++i) {
      t[i] = lr[i] - lg[i];
      if (t[i] < lo[i] || t[i] > hi[i]) throw NotDivisible("remainder left the quotient box");
    }
    if (!mpz_divisible_p(r.leading_coefficient().get_mpz_t(), lc.get_mpz_t())) {
      throw NotDivisible("leading coefficient not divisible");
    }
    mpz_class c = r.leading_coefficient() / lc;
    q.add_term(t, c);
    LaurentPoly step = g * Monomial{t};
    for (const auto& [e, gc] : step.terms()) r.add_term(e, -c * gc);
  }
  return q;
}

std::optional<LaurentPoly> try_exact_div(const LaurentPoly& f, const LaurentPoly& g) {
  try {
    return exact_div(f, g);
  } catch (const NotDivisible&) {
    return std::nullopt;
  }
}

std::optional<Monomial> monomial_ratio(const LaurentPoly& f, const LaurentPoly& g) {
  if (f.nvars() != g.nvars() || f.is_zero() || g.is_zero()) return std::nullopt;
  if (f.num_terms() != g.num_terms()) return std::nullopt;
  if (f.leading_coefficient() != g.leading_coefficient()) return std::nullopt;
  Monomial q = Monomial{f.leading_exponents()} / Monomial{g.leading_exponents()};
  if (g * q != f) return std::nullopt;
  return q;
}

std::optional<FrozenMonomial> frozen_ratio(const LaurentPoly& f, const LaurentPoly& g,
                                           std::size_t num_mutable) {
  auto q = monomial_ratio(f, g);
  if (!q) return std::nullopt;
  for (std::size_t i = 0; i < num_mutable; ++i) {
    if (q->exps[i] != 0) return std::nullopt;
  }
  return FrozenMonomial{Exponents(q->exps.begin() + static_cast<long>(num_mutable), q->exps.end())};
}

FrozenMonomial tropicalize(const LaurentPoly& f, std::size_t num_mutable) {
  if (num_mutable > f.nvars()) throw DimensionMismatch("more mutable variables than ambient size");
  if (f.is_zero()) throw NegativeCoefficient("zero is not in the positive cone");
  std::optional<FrozenMonomial> acc;
  for (const auto& [e, c] : f.terms()) {
    if (sgn(c) <= 0) throw NegativeCoefficient("coefficient " + c.get_str() + " is not positive");
    FrozenMonomial term{Exponents(e.begin() + static_cast<long>(num_mutable), e.end())};
    acc = acc ? trop_add(*acc, term) : term;
  }
  return *acc;
}

LaurentPoly embed_frozen(const FrozenMonomial& q, std::size_t num_mutable) {
  Exponents e(num_mutable, 0);
  e.insert(e.end(), q.exps.begin(), q.exps.end());
  return LaurentPoly::monomial(Monomial{e});
}

LaurentPoly substitute(const LaurentPoly& f, const std::vector<LaurentPoly>& images) {
  if (images.size() != f.nvars()) throw DimensionMismatch("substitution needs one image per variable");
  if (images.empty()) {
    return f.is_zero() ? LaurentPoly(0) : LaurentPoly::constant(0, f.terms().begin()->second);
  }
  const std::size_t target = images.front().nvars();
  for (const auto& im : images) {
    if (im.nvars() != target) throw DimensionMismatch("substitution images live in different ambients");
  }
  std::map<std::pair<std::size_t, int>, LaurentPoly> powers;
  auto power = [&](std::size_t i, int k) -> const LaurentPoly& {
    auto key = std::make_pair(i, k);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, images[i].pow(k)).first;
    return it->second;
  };
  LaurentPoly result(target);
  for (const auto& [e, c] : f.terms()) {
    LaurentPoly term = LaurentPoly::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term *= power(i, e[i]);
    }
    result += term;
  }
  return result;
}

LaurentPoly substitute_exact(const LaurentPoly& f, const std::vector<LaurentPoly>& images) {
  if (images.size() != f.nvars()) throw DimensionMismatch("substitution needs one image per variable");
  if (f.is_zero()) return substitute(f, images);
  Exponents shift = f.min_exponents();
  for (int& e : shift) e = e < 0 ? -e : 0;
  LaurentPoly cleared = f * Monomial{shift};
  LaurentPoly num = substitute(cleared, images);
  LaurentPoly den = substitute(LaurentPoly::monomial(Monomial{shift}), images);
  return exact_div(num, den);
}

Fraction Fraction::pow(int k) const {
  Fraction base = k < 0 ? inverse() : *this;
  int a = k < 0 ? -k : k;
  return {base.num.pow(a), base.den.pow(a)};
}

nlohmann::json to_json(const LaurentPoly& f, const std::vector<std::string>& names) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : f.terms()) {
    terms.push_back({{"exp", e}, {"coef", c.get_str()}});
  }
  std::vector<std::string> vars = names;
  if (vars.size() != f.nvars()) {
    vars.clear();
    for (std::size_t i = 0; i < f.nvars(); ++i) vars.push_back("v" + std::to_string(i));
  }
  return {{"vars", vars}, {"terms", terms}};
}

LaurentPoly laurent_from_json(const nlohmann::json& j, std::vector<std::string>* names) {
  auto vars = j.at("vars").get<std::vector<std::string>>();
  LaurentPoly p(vars.size());
  for (const auto& t : j.at("terms")) {
    auto e = t.at("exp").get<Exponents>();
    if (e.size() != vars.size()) throw DimensionMismatch("term exponent length differs from vars");
    mpz_class c;
    const auto& cj = t.at("coef");
    if (cj.is_string()) {
      if (c.set_str(cj.get<std::string>(), 10) != 0) {
        throw AlgebraError("bad integer coefficient: " + cj.get<std::string>());
      }
    } else {
      c = cj.get<long>();
    }
    p.add_term(e, c);
  }
  if (names) *names = vars;
  return p;
}

std::vector<std::string> default_var_names(std::size_t n, std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < m; ++i) names.push_back("u" + std::to_string(i + 1));
  return names;
}

}  // namespace cqh
