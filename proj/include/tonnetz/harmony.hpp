#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "tonnetz/zmod.hpp"

namespace tonnetz {

enum class Quality { Major, Minor };

Quality opposite(Quality q);

/// 'M' for Major, 'm' for Minor; the notation used across all text output.
char quality_letter(Quality q);

/// One (t,s) tuning universe over Z_n. q = (t + s) mod n is the generator
/// interval shared by both chord shapes; q = 0 is allowed and degenerate.
struct HarmonicSystem {
  int n;
  int t;
  int s;
  int q;

  bool operator==(const HarmonicSystem&) const = default;
};

/// Validates n >= 2 and t, s in [1, n-1], then derives q.
HarmonicSystem make_system(int n, int t, int s);

/// True iff gcd(q, n) > 1; q = 0 counts as gcd = n. A degenerate generator
/// cannot reach every pitch class, which disconnects the chord network.
bool is_degenerate(const HarmonicSystem& sys);

/// Chords are ordered triples, not sets, so vertices stay well-defined even
/// when pitch sets collide (t = s, or q = 0 repeating the root). The set
/// view is derived on demand via pitch_set.
struct Chord {
  Quality quality;
  int root;
  std::array<int, 3> triple;  // (root, quality tone, generator tone)

  bool operator==(const Chord&) const = default;
};

/// Major r -> (r, r+t, r+q); Minor r -> (r, r+s, r+q). The root is reduced
/// into [0, n) first.
Chord chord(const HarmonicSystem& sys, Quality quality, int root);

std::set<int> pitch_set(const Chord& c);

/// The three opposite-quality neighbors in fixed P, L, R order:
///   Major r -> minors at r, r+t, r-s
///   Minor r -> majors at r, r-t, r+s
/// Throws if the chord's triple does not belong to sys.
std::array<Chord, 3> neighbors(const HarmonicSystem& sys, const Chord& c);

/// Major chords rooted 0..n-1, then Minor chords rooted 0..n-1.
std::vector<Chord> all_chords(const HarmonicSystem& sys);

/// The anchor system of a two-factor CRT basis: t is the tone with
/// coordinates (0,1), s the tone with coordinates (1,0). The resulting
/// generator is always q = 1 because (1,1) is the image of 1.
HarmonicSystem canonical_system(const CrtBasis& basis);

/// "(t,s)" display form.
std::string system_name(const HarmonicSystem& sys);

/// "M3" / "m10" display form.
std::string chord_name(const Chord& c);

}  // namespace tonnetz
