#pragma once

#include <vector>

namespace hoalg {

/// One-line notation, zero-based: p[i] = p(i).
using Perm = std::vector<int>;

Perm identity_perm(int n);
bool is_perm(const Perm& p);
/// (a*b)(i) = a(b(i)): b acts first.
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);
int sign(const Perm& p);
/// All of S_n in lexicographic order.
std::vector<Perm> all_perms(int n);
/// (p,q)-shuffles: p(0)<...<p(p-1) and p(p)<...<p(p+q-1).
std::vector<Perm> shuffles(int p, int q);

/// Subsets S of {0..n-1} with |S| = k, increasing, in lexicographic order. The
/// complement follows from the mask.
std::vector<std::vector<int>> subsets(int n, int k);

/// Ordered partitions of {0..n-1} into k nonempty blocks (each block increasing).
std::vector<std::vector<std::vector<int>>> ordered_partitions(int n, int k);

/// Compositions of n into k positive parts.
std::vector<std::vector<int>> compositions(int n, int k);

}  // namespace hoalg
