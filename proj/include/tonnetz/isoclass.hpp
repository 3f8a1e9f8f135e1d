#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tonnetz/harmony.hpp"
#include "tonnetz/levigraph.hpp"
#include "tonnetz/zmod.hpp"

namespace tonnetz {

// An affine pitch-class transformation x -> a x + b that carries every chord
// of a source system onto a chord of a target system. Preserving witnesses
// keep chord quality, Reversing witnesses exchange Major and Minor.
struct IsoWitness {
  AffineMap map;  // pitch classes: x -> a x + b
  Orientation orientation = Orientation::Preserving;
  // Roots move with the same multiplier: the source Major rooted r lands on
  // the target chord rooted root_map(r) = a r + root_map.b, and the source
  // Minor rooted r on the target chord rooted a r + minor_root_offset. A
  // single offset serves both qualities whenever possible and the two fields
  // then agree; some maps genuinely need distinct offsets, e.g. x -> 5x on
  // the n=12 system (1,4) fixes every Major root while shifting the Minor
  // correspondence by 8.
  AffineMap root_map;
  int minor_root_offset = 0;
  // True when the target's Major and Minor set families coincide, so the
  // same map also admits a quality-crossing reading. Only the Preserving
  // witness is emitted then, with this flag as the record of the ambiguity.
  bool self_dual = false;

  bool uniform_roots() const { return root_map.b == minor_root_offset; }
};

// Exhaustively scans every (a, b) with a a unit and b in [0, n) and returns
// all witnesses from src to dst, sorted by (a, b). A witness is emitted
// whenever the image of each chord set family equals the matching target
// family as a multiset; the per-quality root correspondences always exist
// then and are recorded on the witness. Throws when the moduli differ.
std::vector<IsoWitness> note_induced_isos(const HarmonicSystem& src,
                                          const HarmonicSystem& dst);

// Groups the witnesses between two systems by multiplier: for each a that
// appears, the set of orientations observed across all offsets b.
std::map<int, std::set<Orientation>> orientation_census(
    const HarmonicSystem& src, const HarmonicSystem& dst);

enum class IsoMode { Abstract, NoteInduced };
enum class SystemDomain { All, NonDegenerate };

std::string iso_mode_name(IsoMode mode);
std::string system_domain_name(SystemDomain domain);

struct OrbitPartition {
  int n = 0;
  IsoMode mode = IsoMode::Abstract;
  SystemDomain domain = SystemDomain::All;
  // Each orbit lists its (t, s) members sorted ascending; orbits are sorted
  // by their smallest member.
  std::vector<std::vector<std::pair<int, int>>> orbits;
};

// Partitions the chosen domain of (t, s) systems at modulus n into
// equivalence orbits. Abstract mode buckets by the Levi graph's canonical
// certificate; NoteInduced mode buckets by the canonical form of the chord
// set-family pair under the affine group action (with an optional
// Major/Minor role swap). Throws when n < 2.
OrbitPartition classify_orbits(int n, IsoMode mode, SystemDomain domain);

// JSON census report with stable ordering:
// {n, mode, domain, orbits: [[[t,s],...],...], degenerate_members_flagged}.
// The flag is true when the chosen domain contains a degenerate system.
std::string census_json(const OrbitPartition& partition);

struct EquivalenceComparison {
  bool coincide = false;
  // One line per orbit present in only one of the two censuses.
  std::vector<std::string> differences;
};

// Compares classify_orbits(n, Abstract, All) with
// classify_orbits(n, NoteInduced, All).
EquivalenceComparison equivalences_coincide(int n);

// True when some affine map carries the Major set family of one listed
// system onto the Minor family of another (ordered pairs, self included),
// i.e. a quality-crossing identification exists. Checked at the family
// level, so self-dual suppression cannot mask a reversal.
bool any_reversing_witness(const std::vector<HarmonicSystem>& systems);

// True when the listed (t, s) members at modulus n are closed under the
// multiplier action a * (t, s) = (a t mod n, a s mod n) for every unit a,
// and each of those generating maps is an orientation-preserving witness
// onto its labeled image. Quality-crossing witnesses may still exist
// between members (negation reverses (6,5) onto itself, and the identity
// map carries (6,5) onto (4,5)); this checks the generators only.
bool generators_stay_preserving(int n,
                                const std::vector<std::pair<int, int>>& members);

// The decaphonic quartet (6,5), (8,5), (2,5), (4,5) at n = 10: every
// multiplier map generating the quartet from a member lands on a named
// member and preserves orientation. The 12-tone quartet fails the same
// check, since 7 * (4,3) = (4,9) falls outside {(4,3),(8,3),(9,4),(9,8)}
// and reaching (9,4) or (9,8) takes a quality-crossing witness.
bool no_reversing_in_decaphonic();

}  // namespace tonnetz
