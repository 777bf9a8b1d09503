#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "tenv/lattice/lattice.hpp"

namespace tenv {

std::string lattice_to_json(const FiniteLattice& L) {
  int n = L.size();
  std::vector<int> depth(n, 0);
  for (int z : L.linear_order())
    for (int w : L.lower_covers(z)) depth[z] = std::max(depth[z], depth[w] + 1);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
    if (depth[a] != depth[b]) return depth[a] < depth[b];
    return L.label(a) < L.label(b);
  });
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[perm[i]] = i;
  std::vector<std::pair<int, int>> cov;
  for (const auto& [a, b] : L.covers()) cov.emplace_back(pos[a], pos[b]);
  std::sort(cov.begin(), cov.end());
  nlohmann::json j;
  j["size"] = n;
  j["covers"] = nlohmann::json::array();
  for (const auto& [a, b] : cov) j["covers"].push_back({a, b});
  j["labels"] = nlohmann::json::array();
  for (int i = 0; i < n; ++i) j["labels"].push_back(L.label(perm[i]));
  return j.dump();
}

FiniteLattice lattice_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int n = j.at("size").get<int>();
  if (n <= 0) throw std::invalid_argument("lattice size must be positive");
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) leq[i][i] = 1;
  for (const auto& c : j.at("covers")) {
    int a = c.at(0).get<int>(), b = c.at(1).get<int>();
    if (a < 0 || b < 0 || a >= n || b >= n) throw std::invalid_argument("cover index out of range");
    leq[a][b] = 1;
  }
  // transitive closure
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq[i][k])
        for (int l = 0; l < n; ++l)
          if (leq[k][l]) leq[i][l] = 1;
  std::vector<std::string> labels;
  if (j.contains("labels"))
    for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
  return FiniteLattice(n, [&](int a, int b) { return leq[a][b] != 0; }, labels);
}

}  // namespace tenv
