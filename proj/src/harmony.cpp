#include "tonnetz/harmony.hpp"

#include <numeric>
#include <stdexcept>

namespace tonnetz {

Quality opposite(Quality q) { return q == Quality::Major ? Quality::Minor : Quality::Major; }

char quality_letter(Quality q) { return q == Quality::Major ? 'M' : 'm'; }

HarmonicSystem make_system(int n, int t, int s) {
  if (n < 2) throw std::invalid_argument("system modulus must be >= 2, got " + std::to_string(n));
  if (t < 1 || t > n - 1) {
    throw std::invalid_argument("interval t = " + std::to_string(t) + " outside [1, " +
                                std::to_string(n - 1) + "]");
  }
  if (s < 1 || s > n - 1) {
    throw std::invalid_argument("interval s = " + std::to_string(s) + " outside [1, " +
                                std::to_string(n - 1) + "]");
  }
  return HarmonicSystem{n, t, s, mod_norm(t + s, n)};
}

bool is_degenerate(const HarmonicSystem& sys) { return std::gcd(sys.q, sys.n) > 1; }

Chord chord(const HarmonicSystem& sys, Quality quality, int root) {
  int r = mod_norm(root, sys.n);
  int quality_tone = quality == Quality::Major ? sys.t : sys.s;
  return Chord{quality, r, {r, mod_norm(r + quality_tone, sys.n), mod_norm(r + sys.q, sys.n)}};
}

std::set<int> pitch_set(const Chord& c) { return {c.triple.begin(), c.triple.end()}; }

std::array<Chord, 3> neighbors(const HarmonicSystem& sys, const Chord& c) {
  if (chord(sys, c.quality, c.root) != c) {
    throw std::invalid_argument("chord " + chord_name(c) + " does not belong to system " +
                                system_name(sys));
  }
  if (c.quality == Quality::Major) {
    return {chord(sys, Quality::Minor, c.root), chord(sys, Quality::Minor, c.root + sys.t),
            chord(sys, Quality::Minor, c.root - sys.s)};
  }
  return {chord(sys, Quality::Major, c.root), chord(sys, Quality::Major, c.root - sys.t),
          chord(sys, Quality::Major, c.root + sys.s)};
}

std::vector<Chord> all_chords(const HarmonicSystem& sys) {
  std::vector<Chord> chords;
  chords.reserve(2 * sys.n);
  for (int r = 0; r < sys.n; ++r) chords.push_back(chord(sys, Quality::Major, r));
  for (int r = 0; r < sys.n; ++r) chords.push_back(chord(sys, Quality::Minor, r));
  return chords;
}

HarmonicSystem canonical_system(const CrtBasis& basis) {
  if (basis.factors.size() != 2) {
    throw std::invalid_argument("canonical_system needs a two-factor basis, got " +
                                std::to_string(basis.factors.size()) + " factors");
  }
  return make_system(basis.n, basis.basis_tones[1], basis.basis_tones[0]);
}

std::string system_name(const HarmonicSystem& sys) {
  return "(" + std::to_string(sys.t) + "," + std::to_string(sys.s) + ")";
}

std::string chord_name(const Chord& c) {
  return std::string(1, quality_letter(c.quality)) + std::to_string(c.root);
}

}  // namespace tonnetz
