#include "tenv/backends/fq_linalg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tenv::fq {

namespace {

int inv_mod(int a, int q) {
  for (int b = 1; b < q; ++b)
    if (a * b % q == 1) return b;
  throw std::domain_error("not invertible mod q");
}

// in-place RREF; returns the rows that are nonzero
std::vector<Vec> rref_rows(std::vector<Vec> m, int n, int q) {
  std::size_t r = 0;
  for (int c = 0; c < n && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] % q == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    int iv = inv_mod(((m[r][c] % q) + q) % q, q);
    for (auto& v : m[r]) v = ((v * iv) % q + q) % q;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r) continue;
      int f = ((m[i][c] % q) + q) % q;
      if (!f) continue;
      for (int k = 0; k < n; ++k) m[i][k] = (((m[i][k] - f * m[r][k]) % q) + q) % q;
    }
    ++r;
  }
  m.resize(r);
  for (auto& row : m)
    for (auto& v : row) v = ((v % q) + q) % q;
  return m;
}

}  // namespace

Subspace span(int n, std::vector<Vec> vectors, int q) {
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("vector length mismatch");
  return {n, rref_rows(std::move(vectors), n, q)};
}

Subspace zero(int n) { return {n, {}}; }

Subspace full(int n) {
  Subspace s{n, {}};
  for (int i = 0; i < n; ++i) {
    Vec v(n, 0);
    v[i] = 1;
    s.rows.push_back(v);
  }
  return s;
}

std::vector<int> pivots(const Subspace& s) {
  std::vector<int> p;
  for (const auto& r : s.rows)
    for (int c = 0; c < s.n; ++c)
      if (r[c]) {
        p.push_back(c);
        break;
      }
  return p;
}

Subspace sum(const Subspace& a, const Subspace& b, int q) {
  auto rows = a.rows;
  rows.insert(rows.end(), b.rows.begin(), b.rows.end());
  return span(a.n, rows, q);
}

Vec reduce(const Subspace& k, Vec v, int q) {
  auto piv = pivots(k);
  for (std::size_t i = 0; i < piv.size(); ++i) {
    int f = v[piv[i]];
    if (!f) continue;
    for (int c = 0; c < k.n; ++c) v[c] = (((v[c] - f * k.rows[i][c]) % q) + q) % q;
  }
  return v;
}

bool contains(const Subspace& s, const Vec& v, int q) {
  auto r = reduce(s, v, q);
  return std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
}

bool contains(const Subspace& big, const Subspace& small, int q) {
  for (const auto& r : small.rows)
    if (!contains(big, r, q)) return false;
  return true;
}

Subspace intersect(const Subspace& a, const Subspace& b, int q) {
  // dim(a cap b) = dim a + dim b - dim(a + b); find it via the kernel of
  // (lambda, mu) -> lambda A - mu B
  int da = a.dim(), db = b.dim(), n = a.n;
  std::vector<Vec> m;  // transpose system: columns are basis vectors
  for (int c = 0; c < n; ++c) {
    Vec row(da + db);
    for (int i = 0; i < da; ++i) row[i] = a.rows[i][c];
    for (int j = 0; j < db; ++j) row[da + j] = (q - b.rows[j][c]) % q;
    m.push_back(row);
  }
  auto red = rref_rows(m, da + db, q);
  std::vector<int> pc;
  for (const auto& r : red)
    for (int c = 0; c < da + db; ++c)
      if (r[c]) {
        pc.push_back(c);
        break;
      }
  std::vector<char> isp(da + db, 0);
  for (int c : pc) isp[c] = 1;
  std::vector<Vec> out;
  for (int f = 0; f < da + db; ++f) {
    if (isp[f]) continue;
    Vec coef(da + db, 0);
    coef[f] = 1;
    for (std::size_t i = 0; i < pc.size(); ++i) coef[pc[i]] = (q - red[i][f]) % q;
    Vec v(n, 0);
    for (int i = 0; i < da; ++i)
      for (int c = 0; c < n; ++c) v[c] = (v[c] + coef[i] * a.rows[i][c]) % q;
    out.push_back(v);
  }
  return span(n, out, q);
}

Vec quotient_coords(const Subspace& k, const Vec& v, int q) {
  auto r = reduce(k, v, q);
  auto piv = pivots(k);
  Vec out;
  for (int c = 0; c < k.n; ++c)
    if (std::find(piv.begin(), piv.end(), c) == piv.end()) out.push_back(r[c]);
  return out;
}

Vec sub_coords(const Subspace& s, const Vec& v) {
  auto piv = pivots(s);
  Vec out;
  for (int p : piv) out.push_back(v[p]);
  return out;
}

std::vector<Subspace> all_subspaces(int n, int q) {
  // every RREF shape: choose pivots, fill free entries
  std::vector<Subspace> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> piv;
    for (int c = 0; c < n; ++c)
      if (mask >> c & 1) piv.push_back(c);
    std::vector<std::pair<int, int>> free;  // (row, col)
    for (std::size_t i = 0; i < piv.size(); ++i)
      for (int c = piv[i] + 1; c < n; ++c)
        if (!(mask >> c & 1)) free.emplace_back(static_cast<int>(i), c);
    long total = 1;
    for (std::size_t i = 0; i < free.size(); ++i) total *= q;
    for (long code = 0; code < total; ++code) {
      Subspace s{n, std::vector<Vec>(piv.size(), Vec(n, 0))};
      for (std::size_t i = 0; i < piv.size(); ++i) s.rows[i][piv[i]] = 1;
      long c = code;
      for (auto [r, col] : free) {
        s.rows[r][col] = static_cast<int>(c % q);
        c /= q;
      }
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end(), [](const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.rows < b.rows;
  });
  return out;
}

FiniteLattice subspace_lattice(int n, int q, std::vector<Subspace>* elements) {
  auto subs = all_subspaces(n, q);
  int m = static_cast<int>(subs.size());
  std::vector<std::string> labels;
  for (const auto& s : subs) labels.push_back(to_string(s));
  std::vector<char> leq(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) leq[static_cast<std::size_t>(a) * m + b] = subs[a].dim() <= subs[b].dim() && contains(subs[b], subs[a], q);
  FiniteLattice L(m, [&](int a, int b) { return leq[static_cast<std::size_t>(a) * m + b] != 0; }, labels);
  if (elements) *elements = std::move(subs);
  return L;
}

Mat identity(int n) {
  Mat m(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat multiply(const Mat& a, const Mat& b, int q) {
  std::size_t n = a.size(), k = b.size(), p = k ? b[0].size() : 0;
  Mat c(n, Vec(p, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l])
        for (std::size_t j = 0; j < p; ++j) c[i][j] = (c[i][j] + a[i][l] * b[l][j]) % q;
  return c;
}

Vec apply(const Mat& m, const Vec& v, int q) {
  Vec out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    int s = 0;
    for (std::size_t j = 0; j < v.size(); ++j) s += m[i][j] * v[j];
    out[i] = s % q;
  }
  return out;
}

int rank(Mat m, int q) {
  int n = m.empty() ? 0 : static_cast<int>(m[0].size());
  return static_cast<int>(rref_rows(std::move(m), n, q).size());
}

std::vector<Mat> general_linear(int n, int q) {
  std::vector<Mat> out;
  long total = 1;
  for (int i = 0; i < n * n; ++i) total *= q;
  for (long code = 0; code < total; ++code) {
    Mat m(n, Vec(n, 0));
    long c = code;
    for (int i = n * n - 1; i >= 0; --i) {
      m[i / n][i % n] = static_cast<int>(c % q);
      c /= q;
    }
    if (rank(m, q) == n) out.push_back(std::move(m));
  }
  return out;
}

std::vector<Mat> automorphism_matrices(int n, int q) {
  auto mats = general_linear(n, q);
  auto id = identity(n);
  std::stable_partition(mats.begin(), mats.end(), [&](const Mat& m) { return m == id; });
  return mats;
}

std::string to_string(const Subspace& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    if (i) out += ",";
    for (int v : s.rows[i]) out += std::to_string(v);
  }
  return out + ">";
}

}  // namespace tenv::fq
