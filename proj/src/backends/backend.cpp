#include "tenv/backends/backend.hpp"

namespace tenv {

std::map<std::string, Rational> MalcevBackend::generic_point() const {
  std::map<std::string, Rational> p;
  for (const auto& v : variables()) p[v] = 5;
  return p;
}

ObjId MalcevBackend::product(const std::vector<ObjId>& xs) {
  ObjId acc = terminal();
  for (ObjId x : xs) acc = product(acc, x);
  return acc;
}

const CharacterTable& MalcevBackend::aut_table(ObjId x) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = tables_.find(x);
    if (it != tables_.end()) return *it->second;
  }
  auto t = std::make_unique<CharacterTable>(character_table_generic(aut(x)));
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return *tables_.emplace(x, std::move(t)).first->second;
}

std::vector<Subquotient> MalcevBackend::subquotients(ObjId x) {
  std::vector<Subquotient> out;
  const auto& S = sub_lattice(x);
  for (int y = 0; y < S.size(); ++y) {
    ObjId yo = sub_object(x, y);
    const auto& Q = quot_lattice(yo);
    for (int z = 0; z < Q.size(); ++z) {
      ObjId zo = quotient_object(yo, z);
      out.push_back({y, z, zo, label(zo)});
    }
  }
  return out;
}

MPoly MalcevBackend::omega(ObjId x, int z) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = omega_cache_.find({x, z});
    if (it != omega_cache_.end()) return it->second;
  }
  const auto& S = sub_lattice(x);
  auto mu = S.mobius_to(S.top());
  MPoly w;
  for (int y = 0; y < S.size(); ++y) {
    if (mu[y] == 0) continue;
    auto d = restrict_epi(x, z, y);
    if (d) w += *d * Rational(mu[y]);
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  omega_cache_.emplace(std::make_pair(x, z), w);
  return w;
}

MPoly MalcevBackend::omega_object(ObjId x) { return omega(x, quot_lattice(x).top()); }

}  // namespace tenv
