#pragma once

#include <vector>

namespace tonnetz {

/// Normalizes x into the residue range [0, n). Works for negative x.
int mod_norm(long long x, int n);

/// Multiplicative inverse of a modulo n. Throws std::invalid_argument
/// when gcd(a, n) != 1.
int mod_inverse(int a, int n);

/// All residues u in [1, n) with gcd(u, n) = 1, ascending.
/// units(1) is empty; n < 1 throws.
std::vector<int> units(int n);

/// f(x) = a*x + b over Z_n with a a unit. The multiplier a decides the
/// orientation of every isomorphism built on top of the map, so the unit
/// constraint is enforced at construction.
struct AffineMap {
  int a;
  int b;
  int n;

  bool operator==(const AffineMap&) const = default;
};

/// Validates gcd(a, n) = 1 and reduces a, b into [0, n).
AffineMap make_affine(int a, int b, int n);

int affine_apply(const AffineMap& f, int x);

/// h with h(x) = f(g(x)): h.a = f.a*g.a, h.b = f.a*g.b + f.b (mod n).
AffineMap affine_compose(const AffineMap& f, const AffineMap& g);

/// g with g(f(x)) = x: g.a = a^-1, g.b = -a^-1 * b (mod n).
AffineMap affine_invert(const AffineMap& f);

bool is_identity(const AffineMap& f);

/// Coordinate system for Z_n ~ Z_{n1} x ... x Z_{nk} with pairwise coprime
/// factors. basis_tones[i] is the residue congruent to 1 mod factors[i] and
/// 0 mod every other factor, i.e. the preimage of the i-th unit coordinate.
struct CrtBasis {
  int n;
  std::vector<int> factors;
  std::vector<int> basis_tones;

  bool operator==(const CrtBasis&) const = default;
};

/// Solves the basis tones by extended gcd. Factors must each be >= 2,
/// pairwise coprime, at least two of them, with product n; the caller's
/// factor order is preserved.
CrtBasis crt_decompose(int n, const std::vector<int>& factors);

/// (x mod n1, ..., x mod nk) in the basis factor order.
std::vector<int> crt_map(const CrtBasis& basis, int x);

}  // namespace tonnetz
