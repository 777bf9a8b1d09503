#include <algorithm>
#include <set>

#include "tenv/backends/backend.hpp"
#include "tenv/backends/fq_linalg.hpp"

namespace tenv {

namespace {

using fq::Mat;
using fq::Subspace;
using fq::Vec;

constexpr int kMaxDim = 3;
constexpr int kMaxDirectDim = 6;

RelCode encode(const Subspace& s) {
  RelCode c{s.n, s.dim()};
  for (const auto& r : s.rows) c.insert(c.end(), r.begin(), r.end());
  return c;
}

Subspace decode(const RelCode& c, std::size_t& pos) {
  Subspace s;
  s.n = c.at(pos);
  int d = c.at(pos + 1);
  pos += 2;
  for (int i = 0; i < d; ++i) {
    s.rows.emplace_back(c.begin() + static_cast<long>(pos), c.begin() + static_cast<long>(pos + s.n));
    pos += s.n;
  }
  return s;
}

Subspace decode(const RelCode& c) {
  std::size_t pos = 0;
  return decode(c, pos);
}

Vec concat(const Vec& a, const Vec& b) {
  Vec v(a);
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

Vec unit(int n, int i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

// columns of the complement of K in the canonical quotient coordinates
std::vector<int> free_columns(const Subspace& k) {
  auto piv = fq::pivots(k);
  std::vector<int> out;
  for (int c = 0; c < k.n; ++c)
    if (std::find(piv.begin(), piv.end(), c) == piv.end()) out.push_back(c);
  return out;
}

Mat transpose(const Mat& m) {
  if (m.empty()) return {};
  Mat t(m[0].size(), Vec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[0].size(); ++j) t[j][i] = m[i][j];
  return t;
}

class VectBackend final : public MalcevBackend {
 public:
  explicit VectBackend(int q) : q_(q) {
    if (q != 2 && q != 3) throw std::invalid_argument("Vect(F_q) backend supports q in {2,3}");
  }

  std::string name() const override { return "vectfq"; }
  std::vector<std::string> variables() const override { return {"t"}; }

  ObjId terminal() override { return 0; }
  ObjId product(ObjId a, ObjId b) override { return a + b; }
  ObjId parse_object(const std::string& text) override {
    std::string s = text;
    std::string prefix = "F" + std::to_string(q_) + "^";
    if (s.rfind(prefix, 0) == 0) s = s.substr(prefix.size());
    std::size_t pos = 0;
    int n = -1;
    try {
      n = std::stoi(s, &pos);
    } catch (...) {
      pos = 0;
    }
    if (pos != s.size() || n < 0) throw std::invalid_argument("bad Vect(F_q) object '" + text + "'");
    return n;
  }
  std::string describe(ObjId x) override { return "F_" + std::to_string(q_) + "^" + std::to_string(x); }
  std::string label(ObjId x) override { return "F" + std::to_string(q_) + "^" + std::to_string(x); }
  Integer element_count(ObjId x) override {
    Integer r = 1;
    for (int i = 0; i < x; ++i) r *= q_;
    return r;
  }

  const FiniteLattice& sub_lattice(ObjId x) override { return lattice(x).lattice; }
  MPoly delta_sub(ObjId x, int y) override { return tpow(lattice(x).subs[y].dim()); }
  ObjId sub_object(ObjId x, int y) override { return lattice(x).subs[y].dim(); }

  // qO(x) is indexed by the kernel subspace, same list as sO(x)
  const FiniteLattice& quot_lattice(ObjId x) override { return lattice(x).lattice; }
  ObjId quotient_object(ObjId x, int z) override { return x - lattice(x).subs[z].dim(); }
  MPoly delta_epi(ObjId x, int z) override { return tpow(lattice(x).subs[z].dim()); }
  std::optional<MPoly> restrict_epi(ObjId x, int z, int y) override {
    const auto& L = lattice(x);
    const auto& k = L.subs[z];
    const auto& s = L.subs[y];
    if (fq::sum(s, k, q_).dim() != x) return std::nullopt;
    return tpow(fq::intersect(s, k, q_).dim());
  }
  int quot_transfer(ObjId x, int z, int w) override {
    const auto& L = lattice(x);
    const auto& k = L.subs[z];
    const auto& m = L.subs[w];
    if (!fq::contains(m, k, q_)) throw std::invalid_argument("quotient is not below");
    std::vector<Vec> img;
    for (const auto& r : m.rows) img.push_back(fq::quotient_coords(k, r, q_));
    int d = x - k.dim();
    return lattice(d).index.at(fq::span(d, img, q_));
  }

  const FiniteGroup& aut(ObjId x) override { return gl(x).group; }
  Integer aut_order(ObjId x) override {
    Integer qn = element_count(x), r = 1, qi = 1;
    for (int i = 0; i < x; ++i) {
      r *= qn - qi;
      qi *= q_;
    }
    return r;
  }
  int act_quot(ObjId x, int g, int z) override {
    const auto& L = lattice(x);
    const auto& m = gl(x).mats[g];
    std::vector<Vec> img;
    for (const auto& r : L.subs[z].rows) img.push_back(fq::apply(m, r, q_));
    return L.index.at(fq::span(x, img, q_));
  }
  bool trivial_on_quotient(ObjId x, int g, int z) override {
    const auto& k = lattice(x).subs[z];
    const auto& m = gl(x).mats[g];
    for (int i = 0; i < x; ++i) {
      Vec v = fq::apply(m, unit(x, i), q_);
      v[i] = (v[i] - 1 + q_) % q_;
      if (!fq::contains(k, v, q_)) return false;
    }
    return true;
  }
  std::vector<int> aut_embed_product(ObjId a, ObjId b) override {
    auto& ga = gl(a);
    auto& gb = gl(b);
    auto& gp = gl(a + b);
    std::vector<int> out;
    for (const auto& ma : ga.mats)
      for (const auto& mb : gb.mats) {
        Mat m(a + b, Vec(a + b, 0));
        for (int i = 0; i < a; ++i)
          for (int j = 0; j < a; ++j) m[i][j] = ma[i][j];
        for (int i = 0; i < b; ++i)
          for (int j = 0; j < b; ++j) m[a + i][a + j] = mb[i][j];
        out.push_back(gp.index.at(m));
      }
    return out;
  }

  RelCode rel_identity(ObjId x) override {
    std::vector<Vec> rows;
    for (int i = 0; i < x; ++i) rows.push_back(concat(unit(x, i), unit(x, i)));
    return encode(fq::span(2 * x, rows, q_));
  }
  RelCode rel_diagonal(ObjId x, int y) override {
    std::vector<Vec> rows;
    for (const auto& r : lattice(x).subs[y].rows) rows.push_back(concat(r, r));
    return encode(fq::span(2 * x, rows, q_));
  }
  RelCode rel_kernel_pair(ObjId x, int z) override {
    std::vector<Vec> rows;
    for (int i = 0; i < x; ++i) rows.push_back(concat(unit(x, i), unit(x, i)));
    for (const auto& r : lattice(x).subs[z].rows) rows.push_back(concat(r, Vec(x, 0)));
    return encode(fq::span(2 * x, rows, q_));
  }
  RelCode rel_graph(ObjId x, int g) override {
    const auto& m = gl(x).mats[g];
    std::vector<Vec> rows;
    for (int i = 0; i < x; ++i) rows.push_back(concat(unit(x, i), fq::apply(m, unit(x, i), q_)));
    return encode(fq::span(2 * x, rows, q_));
  }
  RelCode rel_epi_graph(ObjId x, int z) override {
    const auto& k = lattice(x).subs[z];
    int d = x - k.dim();
    std::vector<Vec> rows;
    for (int i = 0; i < x; ++i) rows.push_back(concat(unit(x, i), fq::quotient_coords(k, unit(x, i), q_)));
    return encode(fq::span(x + d, rows, q_));
  }
  std::pair<RelCode, MPoly> rel_compose(ObjId x, ObjId y, ObjId w, const RelCode& rc, const RelCode& sc) override {
    Subspace r = decode(rc), s = decode(sc);
    if (r.n != x + y || s.n != y + w) throw std::invalid_argument("relation does not match the objects");
    int n = x + y + w;
    // (r + W) and (X + s) inside X + Y + W
    std::vector<Vec> a, b;
    for (const auto& v : r.rows) a.push_back(concat(v, Vec(w, 0)));
    for (int i = 0; i < w; ++i) a.push_back(unit(n, x + y + i));
    for (int i = 0; i < x; ++i) b.push_back(unit(n, i));
    for (const auto& v : s.rows) b.push_back(concat(Vec(x, 0), v));
    Subspace p = fq::intersect(fq::span(n, a, q_), fq::span(n, b, q_), q_);
    std::vector<Vec> proj;
    for (const auto& v : p.rows) {
      Vec u(v.begin(), v.begin() + x);
      u.insert(u.end(), v.begin() + x + y, v.end());
      proj.push_back(u);
    }
    Subspace comp = fq::span(x + w, proj, q_);
    return {encode(comp), tpow(p.dim() - comp.dim())};
  }
  RelCode rel_swap(ObjId x, ObjId y, const RelCode& rc) override {
    Subspace r = decode(rc);
    std::vector<Vec> rows;
    for (const auto& v : r.rows) {
      Vec u(v.begin() + x, v.end());
      u.insert(u.end(), v.begin(), v.begin() + x);
      rows.push_back(u);
    }
    return encode(fq::span(x + y, rows, q_));
  }
  RelCode rel_tensor(ObjId x1, ObjId y1, ObjId x2, ObjId y2, const RelCode& c1, const RelCode& c2) override {
    Subspace r1 = decode(c1), r2 = decode(c2);
    int n = x1 + x2 + y1 + y2;
    std::vector<Vec> rows;
    for (const auto& v : r1.rows) {
      Vec u(n, 0);
      for (int i = 0; i < x1; ++i) u[i] = v[i];
      for (int i = 0; i < y1; ++i) u[x1 + x2 + i] = v[x1 + i];
      rows.push_back(u);
    }
    for (const auto& v : r2.rows) {
      Vec u(n, 0);
      for (int i = 0; i < x2; ++i) u[x1 + i] = v[i];
      for (int i = 0; i < y2; ++i) u[x1 + x2 + y1 + i] = v[x2 + i];
      rows.push_back(u);
    }
    return encode(fq::span(n, rows, q_));
  }
  MPoly rel_trace(ObjId x, const RelCode& rc) override {
    Subspace r = decode(rc);
    std::vector<Vec> diag;
    for (int i = 0; i < x; ++i) diag.push_back(concat(unit(x, i), unit(x, i)));
    return tpow(fq::intersect(r, fq::span(2 * x, diag, q_), q_).dim());
  }

  std::vector<RelCode> direct_relations(ObjId x, ObjId y) override {
    if (x + y > kMaxDirectDim) throw ScaleLimit("direct subspace enumeration limited to dimension 6");
    std::vector<RelCode> out;
    for (const auto& s : fq::all_subspaces(x + y, q_)) out.push_back(encode(s));
    return out;
  }
  std::vector<GoursatTriple> goursat_triples(ObjId x, ObjId y) override {
    auto sqx = subquotient_pairs(x), sqy = subquotient_pairs(y);
    std::vector<GoursatTriple> out;
    for (const auto& [sx, kx] : sqx)
      for (const auto& [sy, ky] : sqy) {
        int k = sx.dim() - kx.dim();
        if (k != sy.dim() - ky.dim()) continue;
        for (const auto& phi : fq::general_linear(k, q_)) {
          GoursatTriple t;
          t.x_side = side_code(sx, kx);
          t.y_side = side_code(sy, ky);
          for (const auto& row : phi) t.iso.insert(t.iso.end(), row.begin(), row.end());
          out.push_back(std::move(t));
        }
      }
    return out;
  }
  GoursatTriple triple_of(ObjId x, ObjId y, const RelCode& rc) override {
    Subspace r = decode(rc);
    std::vector<Vec> px, py;
    for (const auto& v : r.rows) {
      px.emplace_back(v.begin(), v.begin() + x);
      py.emplace_back(v.begin() + x, v.end());
    }
    Subspace sx = fq::span(x, px, q_), sy = fq::span(y, py, q_);
    Subspace kx = kernel_side(r, x, y, true), ky = kernel_side(r, x, y, false);
    int k = sx.dim() - kx.dim();
    // image of each chosen basis vector of sx/kx
    auto bx = quotient_basis(sx, kx);
    Mat phi(k, Vec(k, 0));
    for (int j = 0; j < k; ++j) {
      // find (bx[j], b) in r: solve over r's basis using x-part coordinates
      Vec b = partner(r, x, y, bx[j]);
      Vec c = quotient_coords_in(sy, ky, b);
      for (int i = 0; i < k; ++i) phi[i][j] = c[i];
    }
    GoursatTriple t;
    t.x_side = side_code(sx, kx);
    t.y_side = side_code(sy, ky);
    for (const auto& row : phi) t.iso.insert(t.iso.end(), row.begin(), row.end());
    return t;
  }
  RelCode relation_of(ObjId x, ObjId y, const GoursatTriple& t) override {
    std::size_t pos = 0;
    Subspace sx = decode(t.x_side, pos), kx = decode(t.x_side, pos);
    pos = 0;
    Subspace sy = decode(t.y_side, pos), ky = decode(t.y_side, pos);
    if (sx.n != x || sy.n != y) throw std::invalid_argument("Goursat triple does not match the objects");
    int k = sx.dim() - kx.dim();
    if (static_cast<int>(t.iso.size()) != k * k) throw std::invalid_argument("Goursat triple sizes differ");
    auto bx = quotient_basis(sx, kx), by = quotient_basis(sy, ky);
    std::vector<Vec> rows;
    for (const auto& v : kx.rows) rows.push_back(concat(v, Vec(y, 0)));
    for (const auto& v : ky.rows) rows.push_back(concat(Vec(x, 0), v));
    for (int j = 0; j < k; ++j) {
      Vec img(y, 0);
      for (int i = 0; i < k; ++i)
        for (int c = 0; c < y; ++c) img[c] = (img[c] + t.iso[i * k + j] * by[i][c]) % q_;
      rows.push_back(concat(bx[j], img));
    }
    return encode(fq::span(x + y, rows, q_));
  }

  std::vector<RelCode> enumerate_T(const std::vector<ObjId>& xs) override {
    std::vector<RelCode> out;
    int total = 0;
    for (ObjId v : xs) total += v;
    if (xs.empty()) return {encode(fq::zero(0))};
    int last = xs.back(), rest = total - last;
    if (rest > kMaxDirectDim) throw ScaleLimit("T enumeration limited to dimension 6 before the last factor");
    for (const auto& s : fq::all_subspaces(rest, q_)) {
      int d = s.dim();
      if (d < last) continue;
      // surjective maps s -> F^last as last x d matrices
      long count = 1;
      for (int i = 0; i < d * last; ++i) count *= q_;
      if (count > 200000) throw ScaleLimit("too many candidate maps in T enumeration");
      for (long code = 0; code < count; ++code) {
        Mat f(last, Vec(d, 0));
        long c = code;
        for (int i = 0; i < last; ++i)
          for (int j = 0; j < d; ++j) {
            f[i][j] = static_cast<int>(c % q_);
            c /= q_;
          }
        if (fq::rank(f, q_) != last) continue;
        std::vector<Vec> rows;
        for (int j = 0; j < d; ++j) {
          Vec img(last, 0);
          for (int i = 0; i < last; ++i) img[i] = f[i][j];
          rows.push_back(concat(s.rows[j], img));
        }
        Subspace r = fq::span(total, rows, q_);
        if (satisfies_T(r, xs)) out.push_back(encode(r));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  RelCode act_T(const std::vector<ObjId>& xs, const std::vector<int>& g, const RelCode& rc) override {
    Subspace r = decode(rc);
    std::vector<Vec> rows;
    for (const auto& v : r.rows) {
      Vec u;
      int off = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        Vec part(v.begin() + off, v.begin() + off + xs[i]);
        Vec img = fq::apply(gl(xs[i]).mats[g[i]], part, q_);
        u.insert(u.end(), img.begin(), img.end());
        off += xs[i];
      }
      rows.push_back(u);
    }
    return encode(fq::span(r.n, rows, q_));
  }

 private:
  struct Lat {
    FiniteLattice lattice;
    std::vector<Subspace> subs;
    std::map<Subspace, int> index;
  };
  struct GL {
    FiniteGroup group;
    std::vector<Mat> mats;
    std::map<Mat, int> index;
  };

  static MPoly tpow(int k) { return MPoly::variable("t").pow(static_cast<unsigned>(k)); }

  Lat& lattice(ObjId x) {
    if (x < 0) throw std::invalid_argument("negative dimension");
    if (x > kMaxDim) throw ScaleLimit("Vect(F_q) objects limited to dimension 3");
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = lats_.find(x);
    if (it == lats_.end()) {
      auto L = std::make_unique<Lat>();
      L->lattice = fq::subspace_lattice(x, q_, &L->subs);
      for (std::size_t i = 0; i < L->subs.size(); ++i) L->index[L->subs[i]] = static_cast<int>(i);
      it = lats_.emplace(x, std::move(L)).first;
    }
    return *it->second;
  }

  GL& gl(ObjId x) {
    if (x > kMaxDim) throw ScaleLimit("Vect(F_q) objects limited to dimension 3");
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = gls_.find(x);
    if (it == gls_.end()) {
      auto mats = fq::automorphism_matrices(x, q_);
      if (static_cast<int>(mats.size()) > FiniteGroup::kMaxOrder)
        throw ScaleLimit("GL(" + std::to_string(x) + "," + std::to_string(q_) + ") exceeds the group size limit");
      auto g = std::make_unique<GL>();
      for (std::size_t i = 0; i < mats.size(); ++i) g->index[mats[i]] = static_cast<int>(i);
      int n = static_cast<int>(mats.size());
      std::vector<int> table(static_cast<std::size_t>(n) * n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = g->index.at(fq::multiply(mats[a], mats[b], q_));
      g->group = FiniteGroup(std::move(table), n, "GL(" + std::to_string(x) + "," + std::to_string(q_) + ")");
      g->mats = std::move(mats);
      it = gls_.emplace(x, std::move(g)).first;
    }
    return *it->second;
  }

  std::vector<std::pair<Subspace, Subspace>> subquotient_pairs(int n) {
    std::vector<std::pair<Subspace, Subspace>> out;
    auto subs = fq::all_subspaces(n, q_);
    for (const auto& s : subs)
      for (const auto& k : subs)
        if (k.dim() <= s.dim() && fq::contains(s, k, q_)) out.emplace_back(s, k);
    return out;
  }

  static std::vector<int> side_code(const Subspace& s, const Subspace& k) {
    auto a = encode(s), b = encode(k);
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  // rows of RREF(s) whose pivot is not a pivot of k: basis of s/k
  static std::vector<Vec> quotient_basis(const Subspace& s, const Subspace& k) {
    auto ps = fq::pivots(s), pk = fq::pivots(k);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (std::find(pk.begin(), pk.end(), ps[i]) == pk.end()) out.push_back(s.rows[i]);
    return out;
  }

  Vec quotient_coords_in(const Subspace& s, const Subspace& k, const Vec& v) const {
    Vec red = fq::reduce(k, v, q_);
    auto ps = fq::pivots(s), pk = fq::pivots(k);
    Vec out;
    for (int p : ps)
      if (std::find(pk.begin(), pk.end(), p) == pk.end()) out.push_back(red[p]);
    return out;
  }

  Subspace kernel_side(const Subspace& r, int x, int y, bool x_side) const {
    // vectors of r vanishing on the other side
    int n = x + y;
    std::vector<Vec> other;
    for (int i = 0; i < n; ++i)
      if (x_side ? i < x : i >= x) other.push_back(unit(n, i));
    Subspace k = fq::intersect(r, fq::span(n, other, q_), q_);
    std::vector<Vec> rows;
    for (const auto& v : k.rows) rows.emplace_back(x_side ? Vec(v.begin(), v.begin() + x) : Vec(v.begin() + x, v.end()));
    return fq::span(x_side ? x : y, rows, q_);
  }

  // some b with (a, b) in r
  Vec partner(const Subspace& r, int x, int y, const Vec& a) const {
    const auto& m = r.rows;
    // brute force over coefficient vectors is fine at desk scale
    int d = r.dim();
    long total = 1;
    for (int i = 0; i < d; ++i) total *= q_;
    for (long code = 0; code < total; ++code) {
      Vec s(x + y, 0);
      long c = code;
      for (int i = 0; i < d; ++i) {
        int coef = static_cast<int>(c % q_);
        c /= q_;
        for (int k = 0; k < x + y; ++k) s[k] = (s[k] + coef * m[i][k]) % q_;
      }
      if (std::equal(a.begin(), a.end(), s.begin())) return Vec(s.begin() + x, s.end());
    }
    throw std::logic_error("vector not in the projection of the relation");
  }

  bool satisfies_T(const Subspace& r, const std::vector<ObjId>& xs) const {
    int n = r.n, off = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::vector<Vec> proj;
      for (const auto& v : r.rows) proj.emplace_back(v.begin() + off, v.begin() + off + xs[i]);
      if (fq::rank(proj, q_) != xs[i]) return false;
      std::vector<Vec> factor;
      for (int k = 0; k < xs[i]; ++k) factor.push_back(unit(n, off + k));
      if (fq::intersect(r, fq::span(n, factor, q_), q_).dim() != 0) return false;
      off += xs[i];
    }
    return true;
  }

  int q_;
  std::mutex mutex_;
  std::map<ObjId, std::unique_ptr<Lat>> lats_;
  std::map<ObjId, std::unique_ptr<GL>> gls_;
};

}  // namespace

std::unique_ptr<MalcevBackend> make_vectfq_backend(int q) { return std::make_unique<VectBackend>(q); }

}  // namespace tenv
