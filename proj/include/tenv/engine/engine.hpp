#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tenv/backends/backend.hpp"

namespace tenv {

/// Raised when two routes that must agree do not.
struct InvariantFailure : std::logic_error {
  using std::logic_error::logic_error;
};

/// K-linear combination of relations r in source x target, seen as a
/// morphism [source] -> [target].
struct TMorphism {
  ObjId source = 0, target = 0;
  std::map<RelCode, MPoly> terms;

  void add(const RelCode& r, const MPoly& c);
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const TMorphism&, const TMorphism&) = default;
  TMorphism& operator+=(const TMorphism& o);
  friend TMorphism operator+(TMorphism a, const TMorphism& b) { return a += b; }
  friend TMorphism operator*(const MPoly& c, TMorphism f);
};

/// [x]^0_chi: object and row of aut_table(x).
struct SimpleLabel {
  ObjId object = 0;
  int chi = 0;
  friend bool operator==(const SimpleLabel&, const SimpleLabel&) = default;
  friend auto operator<=>(const SimpleLabel&, const SimpleLabel&) = default;
};

struct EndDimCheck {
  Integer goursat = 0;  // |goursat_triples(x, x)|
  Integer direct = 0;   // |sO(x x x)| by direct enumeration
  Integer grouped = 0;  // sum_z |sqO_z(x)|^2 |Aut z|
  bool ok() const { return goursat == direct && direct == grouped; }
};

struct MultiplicityEntry {
  SimpleLabel label;
  std::string object_class;
  std::string character;
  Rational character_degree;
  Integer multiplicity;
};

struct MultiplicityTable {
  std::vector<MultiplicityEntry> entries;
  MPoly audit_lhs, audit_rhs;  // sum m dim, dim a * dim b
  bool audit_ok() const { return audit_lhs == audit_rhs; }
  std::string to_json() const;
};

/// One class function on Aut(x) per iso-class of x, values by class index.
struct GrothendieckElement {
  std::map<ObjId, std::vector<Cyclotomic>> components;
  bool is_zero() const;
  friend bool operator==(const GrothendieckElement& a, const GrothendieckElement& b);
};

struct DimensionRow {
  SimpleLabel label;
  std::string name;  // "F2^3:chi8"
  Rational degree;
  MPoly polynomial;
  std::string factored;
};

struct FactorizationReport {
  MPoly polynomial;
  LinearFactorization factors;
  bool linear = false;        // constant times linear factors
  bool omega_shaped = false;  // every root of the admissible form
  std::string to_string() const { return factors.to_string(); }
};

struct RankReport {
  std::size_t rank = 0, columns = 0, rows = 0;
  std::map<std::string, Rational> point;
  bool full_column_rank() const { return rank == columns; }
};

struct NondegeneracyEntry {
  ObjId object;
  int quotient;
  std::string epi;
  MPoly omega;
  std::optional<Rational> value;  // at the specialization, if given
  bool vanishes = false;
};

/// Relation calculus and character formulas on top of a backend. All
/// compositions follow function order: compose(f, g) is "g then f".
class Engine {
 public:
  explicit Engine(MalcevBackend& backend) : b_(backend) {}
  MalcevBackend& backend() { return b_; }

  // morphisms
  TMorphism relation(ObjId x, ObjId y, const RelCode& r, const MPoly& c = MPoly(1)) const;
  TMorphism identity(ObjId x);
  TMorphism graph(ObjId x, int g);
  TMorphism p(ObjId x, int y);    // diagonal of the subobject y
  TMorphism q(ObjId x, int z);    // kernel pair of x ->> z
  TMorphism epi(ObjId x, int z);  // [e]: [x] -> [z]
  TMorphism compose(const TMorphism& f, const TMorphism& g);
  TMorphism tensor(const TMorphism& f, const TMorphism& g);
  TMorphism dual(const TMorphism& f);
  MPoly trace(const TMorphism& f);

  /// p*_y for every y in sO(x), index aligned with sub_lattice(x).
  std::vector<TMorphism> sod_idempotents(ObjId x);
  EndDimCheck end_dim_check(ObjId x);

  /// Character of [x] and [x]* through the relation calculus.
  MPoly char_x(ObjId x, int g);
  MPoly char_x_star(ObjId x, int g);
  /// Character of [x]^0 on the fixed quotient lattice.
  MPoly char_x0(ObjId x, int g);
  /// Character of [x]^0 from inertia groups and Hopf traces.
  MPoly char_x0_homological(ObjId x, int g);
  /// char_x0 at every class representative of aut(x).
  const std::vector<MPoly>& char_x0_classes(ObjId x);
  MPoly simple_dim(const SimpleLabel& label);
  /// sum_{z in qO(x)} mu(x, z) omega_z.
  MPoly dim_x0(ObjId x);
  /// Rows sorted by character degree, then table index.
  std::vector<DimensionRow> dims(ObjId x);

  // T-sets
  std::vector<RelCode> enumerate_T(const std::vector<ObjId>& xs);
  Integer chi_T(const std::vector<ObjId>& xs, const std::vector<int>& g);
  /// chi_T at class tuples, mixed radix with the last factor fastest.
  const std::vector<Integer>& chi_T_classes(const std::vector<ObjId>& xs);
  /// <chi_T | chi_1 x ... x chi_n> by class sums, checked against orbit sums.
  Integer hom_unit_multiplicity(const std::vector<SimpleLabel>& labels);
  Integer hom_unit_multiplicity_orbits(const std::vector<SimpleLabel>& labels);
  MultiplicityTable tensor_decompose(const SimpleLabel& a, const SimpleLabel& b);

  // Grothendieck ring
  GrothendieckElement grothendieck_unit();
  GrothendieckElement grothendieck_simple(const SimpleLabel& label);
  GrothendieckElement grothendieck_product(const GrothendieckElement& f, const GrothendieckElement& g);
  /// f1 *_x f2 as a class function on Aut(x).
  std::vector<Cyclotomic> grothendieck_component(ObjId x1, const std::vector<Cyclotomic>& f1, ObjId x2,
                                                 const std::vector<Cyclotomic>& f2, ObjId x);
  /// Multiplicities of every simple in an element.
  std::map<SimpleLabel, Integer> grothendieck_decompose(const GrothendieckElement& f);
  /// Components ordered by valuation, then label.
  std::vector<ObjId> ordered_support(const GrothendieckElement& f);

  FactorizationReport dim_factorization_check(const SimpleLabel& label);
  RankReport lem_surj_rank_check(ObjId x, int z);
  std::vector<NondegeneracyEntry> nondegeneracy_report(const std::vector<ObjId>& objects,
                                                       const std::map<std::string, Rational>* point = nullptr);

  /// Fixed representative of the iso-class of x.
  ObjId canonical(ObjId x);
  std::string label_name(const SimpleLabel& l);

 private:
  Integer hopf_trace(ObjId x, int z, int k);
  std::vector<int> quot_perm(ObjId x, int g);

  MalcevBackend& b_;
  std::mutex mutex_;
  std::map<ObjId, std::vector<MPoly>> char_cache_;
  std::map<std::vector<ObjId>, std::vector<RelCode>> t_cache_;
  std::map<std::vector<ObjId>, std::vector<Integer>> chi_t_cache_;
  std::map<std::tuple<ObjId, int, int>, Integer> hopf_cache_;
  std::map<std::string, ObjId> canonical_;
};

}  // namespace tenv
