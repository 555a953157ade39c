#pragma once

// Grassmannian and band-matrix determinant fixtures.
//
// The Grassmannian side works in the polynomial ring of a generic (n-k) x n
// matrix with entries x_{r,c}. The band side works in the ring of an (n-k) x n
// band matrix whose entry y_{i,j} is an indeterminate when i <= j <= i+k and
// zero otherwise. All indices in this header are 1-based, matching the usual
// notation for minors.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "clusterqh/exact_algebra.hpp"
#include "clusterqh/quasihom.hpp"
#include "clusterqh/seeds.hpp"

namespace cqh {

class GrassmannError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NoFactorization : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedFixture : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GenericMatrixContext {
 public:
  GenericMatrixContext(int k, int n);

  int k() const { return k_; }
  int n() const { return n_; }
  int rows() const { return n_ - k_; }

  std::size_t num_x() const;
  std::size_t x_index(int r, int c) const;
  std::vector<std::string> x_names() const;

  bool in_band(int i, int j) const { return i >= 1 && i <= rows() && j >= i && j <= i + k_ && j <= n_; }
  std::size_t num_y() const;
  std::size_t y_index(int i, int j) const;
  std::vector<std::string> y_names() const;

  bool operator==(const GenericMatrixContext& o) const { return k_ == o.k_ && n_ == o.n_; }

 private:
  int k_;
  int n_;
};

// A column multiset reduced to least positive residues mod n and sorted.
// sign is 0 when a residue repeats (the coordinate vanishes), else the parity
// of the sorting permutation.
struct PluckerIndex {
  int sign = 0;
  std::vector<int> cols;
};

PluckerIndex reduce_plucker(const GenericMatrixContext& ctx, const std::vector<int>& s);

// Whether the sorted, distinct column set is cyclically consecutive.
bool is_frozen_plucker(const GenericMatrixContext& ctx, const std::vector<int>& cols);

// Determinant of a square matrix of polynomials over a common ambient.
LaurentPoly determinant(const std::vector<std::vector<LaurentPoly>>& m, std::size_t nvars);

LaurentPoly plucker(const GenericMatrixContext& ctx, const std::vector<int>& s);
LaurentPoly band_minor(const GenericMatrixContext& ctx, const std::vector<int>& rows,
                       const std::vector<int>& cols);
LaurentPoly f_star(const GenericMatrixContext& ctx, const std::vector<int>& s);
LaurentPoly g_star(const GenericMatrixContext& ctx, int i, int j);

// The minor of G(X) in the given rows and columns, in the x ring.
LaurentPoly g_star_minor(const GenericMatrixContext& ctx, const std::vector<int>& rows,
                         const std::vector<int>& cols);

// A band minor with a row interval, written Y_{I,J}.
struct BandMinorLabel {
  std::vector<int> rows;
  std::vector<int> cols;

  std::string name() const;
  bool operator==(const BandMinorLabel& o) const { return rows == o.rows && cols == o.cols; }
  bool operator<(const BandMinorLabel& o) const {
    return rows != o.rows ? rows < o.rows : cols < o.cols;
  }
};

// Frozen band generators: diagonal entries, entries on the last band
// diagonal, then the maximal minors on consecutive columns starting at 2..k.
std::vector<BandMinorLabel> band_frozen_labels(const GenericMatrixContext& ctx);
bool is_frozen_band_label(const GenericMatrixContext& ctx, const BandMinorLabel& label);

// Block-triangular criterion: the minor is irreducible unless the band zero
// pattern splits it into a product of two smaller minors.
bool is_irreducible_band_minor(const GenericMatrixContext& ctx, const BandMinorLabel& label);

// All nonzero, irreducible, non-frozen row-solid band minors.
std::vector<BandMinorLabel> nonfrozen_irreducible_minors(const GenericMatrixContext& ctx);

struct FStarFactor {
  FrozenMonomial c;  // exponents over band_frozen_labels(ctx)
  BandMinorLabel minor;
};

// Splits F*(Delta_S) as a frozen monomial times a non-frozen irreducible
// row-solid minor. Throws NoFactorization otherwise, in particular for frozen S.
FStarFactor factor_fstar(const GenericMatrixContext& ctx, const std::vector<int>& s);

// Frozen band monomial attached to any nonzero Plucker coordinate: the factor
// found by factor_fstar, or the full image when Delta_S is frozen.
FrozenMonomial c_value(const GenericMatrixContext& ctx, const std::vector<int>& s);

bool flattoband_check(const GenericMatrixContext& ctx, int a, int s, const std::vector<int>& j);

struct FlatToBandInstance {
  int a;
  int s;
  std::vector<int> j;
};
std::vector<FlatToBandInstance> flattoband_instances(const GenericMatrixContext& ctx);

bool tropical_c_check(const GenericMatrixContext& ctx, const std::vector<int>& s, int i, int j, int k2,
                      int l);

struct ShortPluckerInstance {
  std::vector<int> s;
  int i, j, k, l;
};
std::vector<ShortPluckerInstance> short_plucker_instances(const GenericMatrixContext& ctx);

// Exponents e with p == prod gens[i]^e[i], found by repeated exact division.
std::optional<Exponents> factor_over(const LaurentPoly& p, const std::vector<LaurentPoly>& gens);

// Same, but also accepts p == -prod gens[i]^e[i].
struct SignedFactorization {
  int sign = 1;
  Exponents exponents;
};
std::optional<SignedFactorization> factor_over_signed(const LaurentPoly& p, const std::vector<LaurentPoly>& gens);

// Paired Grassmannian and band seeds in formal presentation, together with
// the realization of every formal variable as a determinant and the monomial
// maps induced by F* and G*.
struct GrassmannFixture {
  GenericMatrixContext ctx;
  Seed gr_base;
  Seed band_base;
  std::vector<std::vector<int>> gr_labels;     // cluster then frozen, as column sets
  std::vector<BandMinorLabel> band_labels;     // cluster then frozen
  std::vector<LaurentPoly> gr_realization;     // in the x ring
  std::vector<LaurentPoly> band_realization;   // in the y ring
  MonomialMap fstar;                           // gr formal -> band formal
  MonomialMap gstar;                           // band formal -> gr formal
  // The determinant images agree with the monomial maps up to these signs,
  // one per source variable.
  std::vector<int> fstar_signs;
  std::vector<int> gstar_signs;
};

// (2,5) is pinned to the standard pentagon data; other (k,n) with k >= 2,
// n - k >= 2 and n <= 6 start from the rectangles seed.
GrassmannFixture build_fixture(const GenericMatrixContext& ctx);

std::string plucker_name(const std::vector<int>& cols);

// Identifies a polynomial in the x ring as a Plucker coordinate.
std::optional<std::vector<int>> identify_plucker(const GenericMatrixContext& ctx, const LaurentPoly& p);

// One exchange relation of a formal pattern checked against determinants:
// lhs_a * lhs_b == prod plus + prod minus, with every factor evaluated as a
// Plucker coordinate or band minor.
struct RelationCheck {
  std::string text;
  bool holds = false;
};

// Explores the Grassmannian pattern (complete for finite type, otherwise the
// star of the base seed) and checks every exchange relation on explored edges.
std::vector<RelationCheck> gr_relation_checks(const GrassmannFixture& fx, std::size_t max_depth);
std::vector<RelationCheck> band_relation_checks(const GrassmannFixture& fx, std::size_t max_depth);

nlohmann::json to_json(const GrassmannFixture& fx);

}  // namespace cqh
