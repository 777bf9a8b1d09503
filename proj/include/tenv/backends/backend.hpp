#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tenv/core/mpoly.hpp"
#include "tenv/groupchar/character.hpp"
#include "tenv/groupchar/group.hpp"
#include "tenv/lattice/lattice.hpp"

namespace tenv {

/// Handle of an object registered in a backend catalog.
using ObjId = int;
/// Canonical code of a subobject r of a product x_1 x ... x x_n.
using RelCode = std::vector<int>;

/// Goursat data of a relation r in x x y: subquotient of x, subquotient of y
/// (backend specific canonical codes) and the identifying isomorphism.
struct GoursatTriple {
  std::vector<int> x_side, y_side, iso;
  friend bool operator==(const GoursatTriple&, const GoursatTriple&) = default;
  friend auto operator<=>(const GoursatTriple&, const GoursatTriple&) = default;
};

/// A subquotient z_y of x: y in sO(x) and z in qO(y), with the iso label of z.
struct Subquotient {
  int sub = 0;
  int quot = 0;
  ObjId object = 0;
  std::string label;
};

/// Thrown when a computation exceeds the desk-scale limits.
struct ScaleLimit : std::length_error {
  using std::length_error::length_error;
};

/// Finite regular Mal'cev category with a degree function.
///
/// Conventions: sub_lattice(x) has x as its top and the minimal subobject at
/// the bottom. quot_lattice(x) has x (identity quotient) at the bottom and the
/// terminal quotient at the top; z <= z' iff x ->> z ->> z'. Relations are
/// subobjects of products; rel_compose(r, s) is "r then s".
class MalcevBackend {
 public:
  virtual ~MalcevBackend() = default;

  virtual std::string name() const = 0;
  /// Variables of the degree function.
  virtual std::vector<std::string> variables() const = 0;
  /// Default numeric specialization used by rank checks.
  virtual std::map<std::string, Rational> generic_point() const;

  virtual ObjId terminal() = 0;
  virtual ObjId product(ObjId a, ObjId b) = 0;
  ObjId product(const std::vector<ObjId>& xs);
  virtual ObjId parse_object(const std::string& text) = 0;
  virtual std::string describe(ObjId x) = 0;
  /// Canonical iso-class label.
  virtual std::string label(ObjId x) = 0;
  /// Size of the underlying finite model (valuation is its logarithm).
  virtual Integer element_count(ObjId x) = 0;

  virtual const FiniteLattice& sub_lattice(ObjId x) = 0;
  /// delta(y ->> terminal).
  virtual MPoly delta_sub(ObjId x, int y) = 0;
  /// The subobject y as an object of its own.
  virtual ObjId sub_object(ObjId x, int y) = 0;

  virtual const FiniteLattice& quot_lattice(ObjId x) = 0;
  virtual ObjId quotient_object(ObjId x, int z) = 0;
  /// delta(x ->> z).
  virtual MPoly delta_epi(ObjId x, int z) = 0;
  /// delta(e|_y) if the restriction of e: x ->> z to y is still onto z.
  virtual std::optional<MPoly> restrict_epi(ObjId x, int z, int y) = 0;
  /// For z <= w in qO(x): the index of w in qO(quotient_object(x, z)).
  virtual int quot_transfer(ObjId x, int z, int w) = 0;

  virtual const FiniteGroup& aut(ObjId x) = 0;
  virtual Integer aut_order(ObjId x) { return aut(x).order(); }
  virtual const CharacterTable& aut_table(ObjId x);
  /// Action of aut(x) on qO(x).
  virtual int act_quot(ObjId x, int g, int z) = 0;
  /// g fixes z and induces the identity on it.
  virtual bool trivial_on_quotient(ObjId x, int g, int z) = 0;
  /// Embedding Aut(a) x Aut(b) -> Aut(a x b); index i * |Aut b| + j.
  virtual std::vector<int> aut_embed_product(ObjId a, ObjId b) = 0;

  // relations r in x x y
  virtual RelCode rel_identity(ObjId x) = 0;
  /// Diagonal of the subobject y: the relation behind p_y.
  virtual RelCode rel_diagonal(ObjId x, int y) = 0;
  /// Kernel pair x x_z x.
  virtual RelCode rel_kernel_pair(ObjId x, int z) = 0;
  virtual RelCode rel_graph(ObjId x, int g) = 0;
  /// Graph of x ->> quotient_object(x, z), in x x z.
  virtual RelCode rel_epi_graph(ObjId x, int z) = 0;
  /// r in x x y then s in y x w: the composite and delta(r x_y s ->> r o s).
  virtual std::pair<RelCode, MPoly> rel_compose(ObjId x, ObjId y, ObjId w, const RelCode& r,
                                                const RelCode& s) = 0;
  virtual RelCode rel_swap(ObjId x, ObjId y, const RelCode& r) = 0;
  /// r1 in x1 x y1, r2 in x2 x y2 -> relation in (x1 x x2) x (y1 x y2).
  virtual RelCode rel_tensor(ObjId x1, ObjId y1, ObjId x2, ObjId y2, const RelCode& r1, const RelCode& r2) = 0;
  /// delta(x^r) with x^r = r meet the diagonal.
  virtual MPoly rel_trace(ObjId x, const RelCode& r) = 0;

  /// All subobjects of x x y by direct enumeration of the product.
  virtual std::vector<RelCode> direct_relations(ObjId x, ObjId y) = 0;
  virtual std::vector<GoursatTriple> goursat_triples(ObjId x, ObjId y) = 0;
  virtual GoursatTriple triple_of(ObjId x, ObjId y, const RelCode& r) = 0;
  virtual RelCode relation_of(ObjId x, ObjId y, const GoursatTriple& t) = 0;

  /// T(x_1, ..., x_n) and the action of Aut(x_1) x ... x Aut(x_n).
  virtual std::vector<RelCode> enumerate_T(const std::vector<ObjId>& xs) = 0;
  virtual RelCode act_T(const std::vector<ObjId>& xs, const std::vector<int>& g, const RelCode& r) = 0;

  /// Subquotients z_y of x.
  std::vector<Subquotient> subquotients(ObjId x);
  /// omega of x ->> z (z in qO(x)).
  MPoly omega(ObjId x, int z);
  /// omega of x ->> terminal.
  MPoly omega_object(ObjId x);

 protected:
  std::mutex cache_mutex_;
  std::map<ObjId, std::unique_ptr<CharacterTable>> tables_;
  std::map<std::pair<ObjId, int>, MPoly> omega_cache_;
};

std::unique_ptr<MalcevBackend> make_setop_backend();
std::unique_ptr<MalcevBackend> make_vectfq_backend(int q);
/// Groups backend; objects are registered from tables or by name.
std::unique_ptr<MalcevBackend> make_group_backend();
/// Objects of the group backend can be inserted directly.
ObjId register_group(MalcevBackend& backend, const FiniteGroup& g);

}  // namespace tenv
