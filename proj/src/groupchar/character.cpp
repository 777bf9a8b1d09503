#include "tenv/groupchar/character.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace tenv {

// ------------------------------------------------------------ partitions

std::vector<PartitionParts> partitions_of(int n) {
  std::vector<PartitionParts> out;
  PartitionParts cur;
  std::function<void(int, int)> rec = [&](int left, int maxpart) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(left, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

PartitionParts cycle_type(const std::vector<int>& perm) {
  PartitionParts t;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = 1;
      ++len;
    }
    t.push_back(len);
  }
  std::sort(t.rbegin(), t.rend());
  return t;
}

Integer z_coefficient(const PartitionParts& rho) {
  std::map<int, unsigned> mult;
  for (int p : rho) mult[p]++;
  Integer z = 1;
  for (const auto& [i, m] : mult) {
    for (unsigned k = 0; k < m; ++k) z *= i;
    z *= factorial(m);
  }
  return z;
}

namespace {

std::mutex mn_mutex;
std::map<std::pair<PartitionParts, PartitionParts>, Integer>& mn_cache() {
  static std::map<std::pair<PartitionParts, PartitionParts>, Integer> cache;
  return cache;
}

Integer mn_rec(const PartitionParts& lambda, const PartitionParts& rho) {
  if (rho.empty()) return lambda.empty() ? 1 : 0;
  auto key = std::make_pair(lambda, rho);
  {
    std::lock_guard<std::mutex> lock(mn_mutex);
    auto it = mn_cache().find(key);
    if (it != mn_cache().end()) return it->second;
  }
  int k = rho.front();
  PartitionParts rest(rho.begin() + 1, rho.end());
  int len = static_cast<int>(lambda.size());
  std::vector<int> beta(len);
  for (int i = 0; i < len; ++i) beta[i] = lambda[i] + (len - 1 - i);
  Integer total = 0;
  for (int i = 0; i < len; ++i) {
    int b = beta[i], nb = b - k;
    if (nb < 0 || std::find(beta.begin(), beta.end(), nb) != beta.end()) continue;
    int between = 0;
    for (int c : beta)
      if (c > nb && c < b) ++between;
    std::vector<int> nbeta = beta;
    nbeta[i] = nb;
    std::sort(nbeta.rbegin(), nbeta.rend());
    PartitionParts mu;
    for (int j = 0; j < len; ++j) {
      int part = nbeta[j] - (len - 1 - j);
      if (part > 0) mu.push_back(part);
    }
    Integer v = mn_rec(mu, rest);
    total += between % 2 ? -v : v;
  }
  std::lock_guard<std::mutex> lock(mn_mutex);
  mn_cache().emplace(key, total);
  return total;
}

int sum_parts(const PartitionParts& p) { return std::accumulate(p.begin(), p.end(), 0); }

std::string parts_label(const PartitionParts& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

}  // namespace

Integer murnaghan_nakayama(const PartitionParts& lambda, const PartitionParts& rho) {
  if (sum_parts(lambda) != sum_parts(rho)) throw std::invalid_argument("partition sizes differ");
  PartitionParts r = rho;
  std::sort(r.rbegin(), r.rend());
  return mn_rec(lambda, r);
}

CharacterTable character_table_sn(int n) {
  if (n < 1 || n > 10) throw std::length_error("character_table_sn requires 1 <= n <= 10");
  auto parts = partitions_of(n);
  std::vector<PartitionParts> classes(parts.rbegin(), parts.rend());
  auto cd = std::make_shared<ClassData>();
  cd->group_order = factorial(n);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    cd->sizes.push_back(cd->group_order / z_coefficient(classes[c]));
    cd->inverse_class.push_back(static_cast<int>(c));
    long o = 1;
    for (int p : classes[c]) o = std::lcm(o, static_cast<long>(p));
    cd->element_orders.push_back(static_cast<int>(o));
    cd->labels.push_back(parts_label(classes[c]));
  }
  CharacterTable t;
  t.classes = cd;
  for (const auto& lambda : parts) {
    std::vector<Cyclotomic> row;
    for (const auto& rho : classes) row.emplace_back(Rational(murnaghan_nakayama(lambda, rho)));
    t.rows.push_back(std::move(row));
    t.row_labels.push_back(parts_label(lambda));
  }
  return t;
}

CharacterTable character_table_sn_group(const FiniteGroup& g, const std::vector<std::vector<int>>& perms) {
  int n = perms.empty() ? 0 : static_cast<int>(perms[0].size());
  CharacterTable t;
  t.classes = g.class_data();
  std::vector<PartitionParts> types;
  for (int c = 0; c < g.class_count(); ++c) types.push_back(cycle_type(perms[g.class_rep(c)]));
  for (const auto& lambda : partitions_of(n)) {
    std::vector<Cyclotomic> row;
    for (const auto& rho : types) row.emplace_back(Rational(murnaghan_nakayama(lambda, rho)));
    t.rows.push_back(std::move(row));
    t.row_labels.push_back(parts_label(lambda));
  }
  if (n == 0) {
    t.rows = {{Cyclotomic(1)}};
    t.row_labels = {"[]"};
  }
  return t;
}

// ------------------------------------------------------------ Dixon-Schneider

namespace {

long mod_pow(long a, long e, long p) {
  long r = 1;
  a %= p;
  if (a < 0) a += p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

long mod_inv(long a, long p) { return mod_pow(a, p - 2, p); }

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using Vec = std::vector<long>;
using Mat = std::vector<Vec>;  // row-major

// null space basis of a d x d matrix over F_p (column vectors)
std::vector<Vec> null_space(Mat m, long p) {
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    long iv = mod_inv(m[r][c], p);
    for (auto& v : m[r]) v = v * iv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      long f = m[i][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] = ((m[i][k] - f * m[r][k]) % p + p) % p;
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<Vec> basis;
  std::vector<char> is_pivot(cols, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = (p - m[i][free]) % p;
    basis.push_back(v);
  }
  return basis;
}

// solve for R with M B = B R, B given as list of k-dim columns
Mat restricted(const Mat& M, const std::vector<Vec>& B, long p) {
  std::size_t k = M.size(), d = B.size();
  // augmented system [B | M B]
  Mat aug(k, Vec(2 * d, 0));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < k; ++i) aug[i][j] = B[j][i];
    for (std::size_t i = 0; i < k; ++i) {
      long s = 0;
      for (std::size_t l = 0; l < k; ++l) s = (s + M[i][l] * B[j][l]) % p;
      aug[i][d + j] = s;
    }
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = r;
    while (piv < k && aug[piv][c] == 0) ++piv;
    if (piv == k) throw std::logic_error("dependent basis in character computation");
    std::swap(aug[piv], aug[r]);
    long iv = mod_inv(aug[r][c], p);
    for (auto& v : aug[r]) v = v * iv % p;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      long f = aug[i][c];
      for (std::size_t col = 0; col < 2 * d; ++col) aug[i][col] = ((aug[i][col] - f * aug[r][col]) % p + p) % p;
    }
    ++r;
  }
  for (std::size_t i = d; i < k; ++i)
    for (std::size_t col = d; col < 2 * d; ++col)
      if (aug[i][col] != 0) throw std::logic_error("subspace not invariant in character computation");
  Mat R(d, Vec(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) R[i][j] = aug[i][d + j];
  return R;
}

long primitive_root(long p) {
  long phi = p - 1;
  std::vector<long> factors;
  long m = phi;
  for (long d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) factors.push_back(m);
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (long f : factors)
      if (mod_pow(g, phi / f, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root");
}

}  // namespace

CharacterTable character_table_generic(const FiniteGroup& g) {
  if (g.order() > 500) throw std::length_error("character_table_generic requires |G| <= 500");
  int k = g.class_count();
  int n = g.order();
  long e = g.exponent();
  long p = e + 1;
  while (!(is_prime(p) && p * p > 4L * n)) p += e;

  // (M_i)_{jl} = a_{ijl}: number of x in C_i with x^-1 z_l in C_j
  std::vector<Mat> M(k, Mat(k, Vec(k, 0)));
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < k; ++l) {
      int z = g.class_rep(l);
      for (int x : g.classes()[i]) M[i][g.class_of(g.mul(g.inv(x), z))][l]++;
    }
  for (auto& m : M)
    for (auto& row : m)
      for (auto& v : row) v %= p;

  std::vector<std::vector<Vec>> spaces;
  {
    std::vector<Vec> id;
    for (int i = 0; i < k; ++i) {
      Vec v(k, 0);
      v[i] = 1;
      id.push_back(v);
    }
    spaces.push_back(id);
  }
  for (int i = 1; i < k; ++i) {
    std::vector<std::vector<Vec>> next;
    for (auto& W : spaces) {
      if (W.size() == 1) {
        next.push_back(W);
        continue;
      }
      Mat R = restricted(M[i], W, p);
      std::size_t d = W.size(), found = 0;
      for (long lam = 0; lam < p && found < d; ++lam) {
        Mat S = R;
        for (std::size_t a = 0; a < d; ++a) S[a][a] = ((S[a][a] - lam) % p + p) % p;
        auto ns = null_space(S, p);
        if (ns.empty()) continue;
        found += ns.size();
        std::vector<Vec> sub;
        for (const auto& c : ns) {
          Vec v(k, 0);
          for (std::size_t j = 0; j < d; ++j)
            for (int a = 0; a < k; ++a) v[a] = (v[a] + c[j] * W[j][a]) % p;
          sub.push_back(v);
        }
        next.push_back(sub);
      }
      if (found != d) throw std::logic_error("class matrix not diagonalizable mod p");
    }
    spaces = std::move(next);
  }
  for (const auto& W : spaces)
    if (W.size() != 1) throw std::logic_error("class sums failed to separate characters");
  if (static_cast<int>(spaces.size()) != k) throw std::logic_error("wrong number of characters");

  const auto& cd = *g.class_data();
  long gen = primitive_root(p);
  long zeta_e = mod_pow(gen, (p - 1) / e, p);
  std::vector<std::vector<Cyclotomic>> rows;
  for (const auto& W : spaces) {
    Vec w = W[0];
    if (w[0] == 0) throw std::logic_error("central character vanishes at the identity");
    long iv = mod_inv(w[0], p);
    for (auto& v : w) v = v * iv % p;
    long s = 0;
    for (int l = 0; l < k; ++l) {
      long size = cd.sizes[l].get_si() % p;
      s = (s + w[l] * w[cd.inverse_class[l]] % p * mod_inv(size, p)) % p;
    }
    long deg2 = static_cast<long>(n) % p * mod_inv(s, p) % p;
    long deg = -1;
    for (long d = 1; d * d <= n; ++d)
      if (d * d % p == deg2 && n % d == 0) deg = d;
    if (deg < 0) throw std::logic_error("no valid character degree mod p");
    Vec chi(k);
    for (int l = 0; l < k; ++l) chi[l] = deg * w[l] % p * mod_inv(cd.sizes[l].get_si() % p, p) % p;
    std::vector<Cyclotomic> row;
    for (int l = 0; l < k; ++l) {
      int rep = g.class_rep(l);
      long o = g.element_order(rep);
      long zo = mod_pow(zeta_e, e / o, p);
      std::vector<Rational> mult(o);
      long inv_o = mod_inv(o, p);
      for (long j = 0; j < o; ++j) {
        long acc = 0;
        for (long t = 0; t < o; ++t) {
          long val = chi[g.class_of(g.power(rep, t))];
          acc = (acc + val * mod_pow(zo, (o - (j * t) % o) % o, p)) % p;
        }
        long m = acc * inv_o % p;
        if (m > deg) throw std::logic_error("eigenvalue multiplicity out of range");
        mult[j] = m;
      }
      row.push_back(Cyclotomic::from_powers(static_cast<unsigned>(o), mult));
    }
    rows.push_back(std::move(row));
  }
  auto text = [](const std::vector<Cyclotomic>& r) {
    std::vector<std::string> s;
    for (const auto& v : r) s.push_back(v.to_string());
    return s;
  };
  auto is_trivial = [](const std::vector<Cyclotomic>& r) {
    for (const auto& v : r)
      if (v != Cyclotomic(1)) return false;
    return true;
  };
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    Rational da = a[0].to_rational(), db = b[0].to_rational();
    if (da != db) return da < db;
    bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb) return ta;
    return text(a) < text(b);
  });
  CharacterTable t;
  t.classes = g.class_data();
  t.rows = std::move(rows);
  std::map<std::string, int> seen;
  for (const auto& r : t.rows) {
    std::string d = tenv::to_string(r[0].to_rational());
    int c = seen[d]++;
    t.row_labels.push_back("chi" + d + (c ? std::string(c, '\'') : ""));
  }
  verify_character_table(t);
  return t;
}

void verify_character_table(const CharacterTable& t) {
  const auto& cd = *t.classes;
  if (t.size() != cd.count()) throw std::logic_error("character table is not square");
  Integer sum_sq = 0;
  for (int i = 0; i < t.size(); ++i) {
    for (int j = 0; j < t.size(); ++j) {
      Cyclotomic ip = inner_product(t.character(i), t.character(j));
      if (ip != Cyclotomic(i == j ? 1 : 0)) throw std::logic_error("character rows are not orthonormal");
    }
    Rational d = t.degree(i);
    sum_sq += Rational(d * d).get_num();
  }
  if (sum_sq != cd.group_order) throw std::logic_error("sum of squared degrees differs from |G|");
  for (const auto& v : t.rows[0])
    if (v != Cyclotomic(1)) throw std::logic_error("first row is not the trivial character");
  for (int a = 0; a < cd.count(); ++a)
    for (int b = 0; b < cd.count(); ++b) {
      Cyclotomic s;
      for (int i = 0; i < t.size(); ++i) s += t.rows[i][a] * t.rows[i][cd.inverse_class[b]];
      Cyclotomic expect = a == b ? Cyclotomic(Rational(cd.group_order / cd.sizes[a])) : Cyclotomic(0);
      if (s != expect) throw std::logic_error("character columns are not orthogonal");
    }
}

int CharacterTable::dual_row(int row) const {
  std::vector<Cyclotomic> c;
  for (const auto& v : rows[row]) c.push_back(v.conj());
  for (int i = 0; i < size(); ++i)
    if (rows[i] == c) return i;
  throw std::logic_error("dual character not found");
}

std::string CharacterTable::to_json() const {
  nlohmann::json j;
  j["group_order"] = tenv::to_string(classes->group_order);
  j["class_sizes"] = nlohmann::json::array();
  for (const auto& s : classes->sizes) j["class_sizes"].push_back(tenv::to_string(s));
  j["class_labels"] = classes->labels;
  j["element_orders"] = classes->element_orders;
  j["rows"] = nlohmann::json::array();
  for (int i = 0; i < size(); ++i) {
    nlohmann::json r;
    r["label"] = row_labels[i];
    r["values"] = nlohmann::json::array();
    for (const auto& v : rows[i]) r["values"].push_back(v.to_string());
    j["rows"].push_back(r);
  }
  return j.dump();
}

// ------------------------------------------------------------ class functions

Cyclotomic inner_product(const ClassFunction<Cyclotomic>& f, const ClassFunction<Cyclotomic>& h) {
  if (f.classes != h.classes && !(f.classes && h.classes && f.classes->sizes == h.classes->sizes &&
                                  f.classes->inverse_class == h.classes->inverse_class))
    throw std::invalid_argument("class functions live on different groups");
  const auto& cd = *f.classes;
  Cyclotomic s;
  for (int c = 0; c < cd.count(); ++c) s += f.values[c] * h.values[cd.inverse_class[c]] * Rational(cd.sizes[c]);
  return s / Rational(cd.group_order);
}

Rational inner_product(const ClassFunction<Rational>& f, const ClassFunction<Rational>& h) {
  if (f.classes->sizes != h.classes->sizes) throw std::invalid_argument("class functions live on different groups");
  const auto& cd = *f.classes;
  Rational s = 0;
  for (int c = 0; c < cd.count(); ++c) s += f.values[c] * h.values[cd.inverse_class[c]] * Rational(cd.sizes[c]);
  return s / Rational(cd.group_order);
}

MPoly inner_product(const ClassFunction<MPoly>& f, const ClassFunction<Cyclotomic>& chi) {
  if (f.classes->sizes != chi.classes->sizes) throw std::invalid_argument("class functions live on different groups");
  const auto& cd = *f.classes;
  unsigned L = 1;
  for (const auto& v : chi.values) L = std::lcm(L, v.order());
  std::vector<MPoly> comp(euler_phi(L));
  for (int c = 0; c < cd.count(); ++c) {
    Cyclotomic v = chi.values[cd.inverse_class[c]].lift(L);
    for (std::size_t k = 0; k < v.coefficients().size(); ++k)
      if (v.coefficients()[k] != 0) comp[k] += f.values[c] * (v.coefficients()[k] * Rational(cd.sizes[c]));
  }
  for (std::size_t k = 1; k < comp.size(); ++k)
    if (!comp[k].is_zero()) throw std::domain_error("inner product is not rational");
  return comp[0] / Rational(cd.group_order);
}

namespace {

template <class T>
ClassFunction<T> induce_impl(const FiniteGroup& g, const std::vector<int>& h_elems, const std::vector<T>& values) {
  if (h_elems.size() != values.size()) throw std::invalid_argument("value count differs from subgroup size");
  if (!g.is_subgroup(h_elems)) throw std::invalid_argument("induction source is not a subgroup");
  std::vector<T> sums(g.class_count());
  for (std::size_t i = 0; i < h_elems.size(); ++i) sums[g.class_of(h_elems[i])] += values[i];
  const auto& cd = *g.class_data();
  for (int c = 0; c < g.class_count(); ++c) {
    Rational factor = Rational(cd.group_order) / (Rational(static_cast<long>(h_elems.size())) * Rational(cd.sizes[c]));
    sums[c] *= factor;
  }
  return {g.class_data(), std::move(sums)};
}

void check_hom(const FiniteGroup& h, const FiniteGroup& g, const std::vector<int>& embed, bool injective) {
  if (static_cast<int>(embed.size()) != h.order()) throw std::invalid_argument("embedding has the wrong size");
  for (int a = 0; a < h.order(); ++a)
    for (int b = 0; b < h.order(); ++b)
      if (embed[h.mul(a, b)] != g.mul(embed[a], embed[b]))
        throw std::invalid_argument("embedding is not a homomorphism");
  if (injective) {
    auto s = embed;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("embedding is not injective");
  }
}

}  // namespace

ClassFunction<Cyclotomic> induce_elementwise(const FiniteGroup& g, const std::vector<int>& h_elems,
                                             const std::vector<Cyclotomic>& values) {
  return induce_impl(g, h_elems, values);
}

ClassFunction<MPoly> induce_elementwise(const FiniteGroup& g, const std::vector<int>& h_elems,
                                        const std::vector<MPoly>& values) {
  return induce_impl(g, h_elems, values);
}

ClassFunction<Cyclotomic> induce(const FiniteGroup& h, const ClassFunction<Cyclotomic>& f, const FiniteGroup& g,
                                 const std::vector<int>& embed) {
  check_hom(h, g, embed, true);
  std::vector<Cyclotomic> vals;
  for (int a = 0; a < h.order(); ++a) vals.push_back(f.values[h.class_of(a)]);
  return induce_impl(g, embed, vals);
}

ClassFunction<Cyclotomic> restrict_to(const FiniteGroup& h, const FiniteGroup& g, const ClassFunction<Cyclotomic>& f,
                                      const std::vector<int>& embed) {
  check_hom(h, g, embed, false);
  std::vector<Cyclotomic> vals;
  for (int c = 0; c < h.class_count(); ++c) vals.push_back(f.values[g.class_of(embed[h.class_rep(c)])]);
  return {h.class_data(), vals};
}

ClassFunction<Cyclotomic> permutation_character(const FiniteGroup& g, int points,
                                                const std::function<int(int, int)>& act) {
  for (int p = 0; p < points; ++p)
    if (act(g.identity(), p) != p) throw std::invalid_argument("identity does not act trivially");
  auto check = [&](int a, int b) {
    for (int p = 0; p < points; ++p) {
      int q = act(b, p);
      if (q < 0 || q >= points) throw std::invalid_argument("action leaves the point set");
      if (act(a, q) != act(g.mul(a, b), p)) throw std::invalid_argument("action is not compatible with the product");
    }
  };
  long work = static_cast<long>(g.order()) * g.order() * points;
  if (work <= 20000000L) {
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b) check(a, b);
  } else {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> pick(0, g.order() - 1);
    for (int i = 0; i < 2000; ++i) check(pick(rng), pick(rng));
  }
  std::vector<Cyclotomic> vals;
  for (int c = 0; c < g.class_count(); ++c) {
    long fixed = 0;
    for (int p = 0; p < points; ++p)
      if (act(g.class_rep(c), p) == p) ++fixed;
    vals.emplace_back(Rational(fixed));
  }
  return {g.class_data(), vals};
}

ClassFunction<Cyclotomic> regular_character(const FiniteGroup& g) {
  return permutation_character(g, g.order(), [&](int a, int p) { return g.mul(a, p); });
}

std::vector<Integer> decompose(const CharacterTable& t, const ClassFunction<Cyclotomic>& f) {
  std::vector<Integer> out;
  for (int i = 0; i < t.size(); ++i) {
    Cyclotomic m = inner_product(f, t.character(i));
    Rational r = m.to_rational();
    if (r.get_den() != 1) throw std::domain_error("multiplicity is not an integer");
    out.push_back(r.get_num());
  }
  return out;
}

}  // namespace tenv
