#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tonnetz/harmony.hpp"
#include "tonnetz/isoclass.hpp"

namespace tonnetz {

/// One chord in a progression, named by quality and root rather than by
/// pitch content, so a step stays unambiguous even in systems whose pitch
/// sets collide.
struct PathStep {
  Quality quality = Quality::Major;
  int root = 0;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

/// A chord progression bound to the system it walks on. The walk is valid
/// when every consecutive pair of steps is joined by a voice-leading edge,
/// which in particular forces strict Major/Minor alternation.
struct ProgressionPath {
  HarmonicSystem system;
  std::vector<PathStep> steps;
};

/// "M0 -> m0 -> M4" display form.
std::string path_name(const ProgressionPath& path);

/// Returns an empty optional when every transition follows the neighbor
/// rule, otherwise the index of the first offending transition (index i sits
/// between steps i and i+1). Throws std::invalid_argument when steps is
/// empty or some root lies outside [0, n).
std::optional<std::size_t> validate_path(const HarmonicSystem& sys,
                                         const std::vector<PathStep>& steps);

/// Carries a path through a note-induced witness into dst. A step keeps its
/// quality under a Preserving witness and flips it under a Reversing one;
/// its root moves through the witness root law for the step's own quality
/// (Major steps via root_map, Minor steps via minor_root_offset). Throws
/// std::invalid_argument when the moduli disagree, when the path does not
/// validate on its own system, or when the witness fails to carry the
/// path's chords onto dst chords; throws std::domain_error in the one
/// remaining corner where the carried path exists but fails validation on
/// dst, which requires chords collapsed to fewer than three pitches.
ProgressionPath transport_path(const IsoWitness& w,
                               const ProgressionPath& path,
                               const HarmonicSystem& dst);

/// The bundled decaphonic walk on (6,5):
///   M0 m0 M4 m9 M9 m5 M0 m6 M1 m7 M2 m2 M6 m1 M5 m0 M0
/// Seventeen stored steps spelling sixteen transitions; it starts and ends
/// on M0 and uses all three edge colors.
ProgressionPath miniature();

/// Seeded random walk with `length` steps: the opening chord draws its
/// quality and then its root uniformly, every later step picks uniformly
/// among the three neighbors of its predecessor. Uses mt19937 with modulo
/// reduction so a seed denotes the same walk on every platform. The result
/// is always valid by construction. Throws std::invalid_argument when
/// length is zero.
ProgressionPath random_path(const HarmonicSystem& sys, std::size_t length,
                            std::uint32_t seed);

/// Serialization round-trip. The document shape is
///   {"system": {"n": 10, "t": 6, "s": 5},
///    "steps": [{"quality": "M", "root": 0}, ...]}
/// path_to_json emits two-space indented text with stable key order.
/// path_from_json throws std::runtime_error when the document is present
/// but malformed (missing keys, wrong types, quality letters other than
/// "M"/"m") and std::invalid_argument when the numbers themselves are out
/// of domain (bad n/t/s); malformed JSON text raises the parser's own
/// exception.
std::string path_to_json(const ProgressionPath& path);
ProgressionPath path_from_json(const std::string& text);

}  // namespace tonnetz
