#include "hoalg/permutation.hpp"

#include <algorithm>
#include <numeric>

namespace hoalg {

Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool is_perm(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

Perm inverse(const Perm& p) {
  Perm q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

int sign(const Perm& p) {
  int s = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<Perm> shuffles(int p, int q) {
  std::vector<Perm> out;
  for (const auto& s : subsets(p + q, p)) {
    Perm sh(p + q);
    std::vector<char> in(p + q, 0);
    for (int i = 0; i < p; ++i) {
      sh[i] = s[i];
      in[s[i]] = 1;
    }
    int j = p;
    for (int v = 0; v < p + q; ++v)
      if (!in[v]) sh[j++] = v;
    out.push_back(sh);
  }
  return out;
}

std::vector<std::vector<std::vector<int>>> ordered_partitions(int n, int k) {
  std::vector<std::vector<std::vector<int>>> out;
  if (k < 1 || k > n) return out;
  // enumerate surjections {0..n-1} -> {0..k-1}
  std::vector<int> label(n, 0);
  while (true) {
    std::vector<std::vector<int>> blocks(k);
    for (int i = 0; i < n; ++i) blocks[label[i]].push_back(i);
    bool onto = std::all_of(blocks.begin(), blocks.end(), [](const auto& b) { return !b.empty(); });
    if (onto) out.push_back(std::move(blocks));
    int i = n - 1;
    while (i >= 0 && label[i] == k - 1) label[i--] = 0;
    if (i < 0) break;
    ++label[i];
  }
  return out;
}

std::vector<std::vector<int>> compositions(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 1 || n < k) return out;
  if (k == 1) return {{n}};
  for (int first = 1; first <= n - k + 1; ++first)
    for (auto rest : compositions(n - first, k - 1)) {
      rest.insert(rest.begin(), first);
      out.push_back(std::move(rest));
    }
  return out;
}

}  // namespace hoalg
