#include "tonnetz/zmod.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace tonnetz {

namespace {

// Returns (g, u) with u*a + v*n = g = gcd(a, n); only u is needed here.
std::pair<long long, long long> extended_gcd(long long a, long long n) {
  long long old_r = a, r = n;
  long long old_u = 1, u = 0;
  while (r != 0) {
    long long q = old_r / r;
    long long tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_u - q * u;
    old_u = u;
    u = tmp;
  }
  return {old_r, old_u};
}

void require_modulus(int n) {
  if (n < 1) throw std::invalid_argument("modulus must be positive, got " + std::to_string(n));
}

}  // namespace

int mod_norm(long long x, int n) {
  require_modulus(n);
  long long r = x % n;
  if (r < 0) r += n;
  return static_cast<int>(r);
}

int mod_inverse(int a, int n) {
  require_modulus(n);
  auto [g, u] = extended_gcd(mod_norm(a, n), n);
  if (g != 1) {
    throw std::invalid_argument(std::to_string(a) + " is not a unit mod " + std::to_string(n));
  }
  return mod_norm(u, n);
}

std::vector<int> units(int n) {
  require_modulus(n);
  std::vector<int> result;
  for (int u = 1; u < n; ++u) {
    if (std::gcd(u, n) == 1) result.push_back(u);
  }
  return result;
}

AffineMap make_affine(int a, int b, int n) {
  require_modulus(n);
  int an = mod_norm(a, n);
  if (std::gcd(an, n) != 1) {
    throw std::invalid_argument("affine multiplier " + std::to_string(a) + " is not a unit mod " +
                                std::to_string(n));
  }
  return AffineMap{an, mod_norm(b, n), n};
}

int affine_apply(const AffineMap& f, int x) {
  return mod_norm(static_cast<long long>(f.a) * mod_norm(x, f.n) + f.b, f.n);
}

AffineMap affine_compose(const AffineMap& f, const AffineMap& g) {
  if (f.n != g.n) {
    throw std::invalid_argument("affine_compose: moduli differ (" + std::to_string(f.n) + " vs " +
                                std::to_string(g.n) + ")");
  }
  long long a = static_cast<long long>(f.a) * g.a;
  long long b = static_cast<long long>(f.a) * g.b + f.b;
  return AffineMap{mod_norm(a, f.n), mod_norm(b, f.n), f.n};
}

AffineMap affine_invert(const AffineMap& f) {
  int ai = mod_inverse(f.a, f.n);
  return AffineMap{ai, mod_norm(-static_cast<long long>(ai) * f.b, f.n), f.n};
}

bool is_identity(const AffineMap& f) { return f.a == mod_norm(1, f.n) && f.b == 0; }

CrtBasis crt_decompose(int n, const std::vector<int>& factors) {
  require_modulus(n);
  if (factors.size() < 2) {
    throw std::invalid_argument("crt_decompose needs at least two factors");
  }
  long long product = 1;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 2) {
      throw std::invalid_argument("crt factor " + std::to_string(factors[i]) + " must be >= 2");
    }
    for (size_t j = i + 1; j < factors.size(); ++j) {
      if (std::gcd(factors[i], factors[j]) != 1) {
        throw std::invalid_argument("crt factors " + std::to_string(factors[i]) + " and " +
                                    std::to_string(factors[j]) + " are not coprime");
      }
    }
    product *= factors[i];
  }
  if (product != n) {
    throw std::invalid_argument("crt factor product " + std::to_string(product) +
                                " does not equal modulus " + std::to_string(n));
  }

  CrtBasis basis;
  basis.n = n;
  basis.factors = factors;
  basis.basis_tones.reserve(factors.size());
  for (int ni : factors) {
    int rest = n / ni;  // 0 mod every factor but ni
    int tone = mod_norm(static_cast<long long>(rest) * mod_inverse(rest % ni, ni), n);
    basis.basis_tones.push_back(tone);
  }
  return basis;
}

std::vector<int> crt_map(const CrtBasis& basis, int x) {
  if (x < 0 || x >= basis.n) {
    throw std::invalid_argument("crt_map argument " + std::to_string(x) + " outside [0, " +
                                std::to_string(basis.n) + ")");
  }
  std::vector<int> coords;
  coords.reserve(basis.factors.size());
  for (int ni : basis.factors) coords.push_back(x % ni);
  return coords;
}

}  // namespace tonnetz
