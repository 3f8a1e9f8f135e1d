#include "tonnetz/isoclass.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace tonnetz {

namespace {

// Pitch sets as bitmasks over Z_n (n <= 31 in practice); family comparisons
// reduce to sorted integer vectors.
using Mask = std::uint32_t;

struct Families {
  std::vector<Mask> majors;  // indexed by root
  std::vector<Mask> minors;
};

Mask chord_mask(const Chord& c) {
  Mask m = 0;
  for (int p : c.triple) m |= Mask{1} << p;
  return m;
}

Families families_of(const HarmonicSystem& sys) {
  Families f;
  f.majors.resize(sys.n);
  f.minors.resize(sys.n);
  for (int r = 0; r < sys.n; ++r) {
    f.majors[r] = chord_mask(chord(sys, Quality::Major, r));
    f.minors[r] = chord_mask(chord(sys, Quality::Minor, r));
  }
  return f;
}

Mask apply_to_mask(Mask m, int a, int b, int n) {
  Mask out = 0;
  for (int p = 0; p < n; ++p) {
    if ((m >> p) & 1) out |= Mask{1} << ((a * p + b) % n);
  }
  return out;
}

std::vector<Mask> image_family(const std::vector<Mask>& family, int a, int b,
                               int n) {
  std::vector<Mask> out(family.size());
  for (std::size_t r = 0; r < family.size(); ++r) {
    out[r] = apply_to_mask(family[r], a, b, n);
  }
  return out;
}

std::vector<Mask> sorted_copy(std::vector<Mask> family) {
  std::sort(family.begin(), family.end());
  return family;
}

struct RootOffsets {
  int major = 0;
  int minor = 0;
};

// Every member of a chord set family is a translate of one shape, so a
// family-level match always admits, per quality, at least one offset c with
// img[r] == tgt[(a r + c) mod n] for all r. The smallest offset valid for
// both qualities at once is preferred; only when no shared offset exists
// does each quality keep its own smallest.
RootOffsets root_offsets(int a, const std::vector<Mask>& img_major,
                         const std::vector<Mask>& img_minor,
                         const std::vector<Mask>& tgt_for_major,
                         const std::vector<Mask>& tgt_for_minor, int n) {
  const auto valid = [a, n](const std::vector<Mask>& img,
                            const std::vector<Mask>& tgt) {
    std::vector<int> good;
    for (int c = 0; c < n; ++c) {
      bool ok = true;
      for (int r = 0; r < n && ok; ++r) ok = img[r] == tgt[(a * r + c) % n];
      if (ok) good.push_back(c);
    }
    return good;
  };
  const std::vector<int> for_major = valid(img_major, tgt_for_major);
  const std::vector<int> for_minor = valid(img_minor, tgt_for_minor);
  if (for_major.empty() || for_minor.empty()) {
    throw std::logic_error("root_offsets: family match without a root law");
  }
  for (int c : for_major) {
    if (std::find(for_minor.begin(), for_minor.end(), c) != for_minor.end()) {
      return RootOffsets{c, c};
    }
  }
  return RootOffsets{for_major.front(), for_minor.front()};
}

std::string serialize_family_pair(const std::vector<Mask>& first,
                                  const std::vector<Mask>& second) {
  std::ostringstream out;
  for (Mask m : first) out << m << ',';
  out << '|';
  for (Mask m : second) out << m << ',';
  return out.str();
}

// Canonical form of the (Major family, Minor family) pair under every affine
// map and the optional quality swap. Two systems get the same key exactly
// when some affine map carries one family pair onto the other, possibly
// crossing qualities.
std::string family_orbit_key(const HarmonicSystem& sys) {
  const int n = sys.n;
  const Families f = families_of(sys);
  std::string best;
  for (int a : units(n)) {
    for (int b = 0; b < n; ++b) {
      const auto img_major = sorted_copy(image_family(f.majors, a, b, n));
      const auto img_minor = sorted_copy(image_family(f.minors, a, b, n));
      for (int swap = 0; swap < 2; ++swap) {
        std::string key = swap ? serialize_family_pair(img_minor, img_major)
                               : serialize_family_pair(img_major, img_minor);
        if (best.empty() || key < best) best = std::move(key);
      }
    }
  }
  return best;
}

std::vector<std::pair<int, int>> domain_members(int n, SystemDomain domain) {
  std::vector<std::pair<int, int>> members;
  for (int t = 1; t < n; ++t) {
    for (int s = 1; s < n; ++s) {
      if (domain == SystemDomain::NonDegenerate &&
          is_degenerate(make_system(n, t, s))) {
        continue;
      }
      members.emplace_back(t, s);
    }
  }
  return members;
}

std::string orbit_display(const std::vector<std::pair<int, int>>& orbit) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    if (i > 0) out << ',';
    out << '(' << orbit[i].first << ',' << orbit[i].second << ')';
  }
  out << '}';
  return out.str();
}

}  // namespace

std::vector<IsoWitness> note_induced_isos(const HarmonicSystem& src,
                                          const HarmonicSystem& dst) {
  if (src.n != dst.n) {
    throw std::invalid_argument("note_induced_isos: moduli differ (" +
                                std::to_string(src.n) + " vs " +
                                std::to_string(dst.n) + ")");
  }
  const int n = src.n;
  const Families fs = families_of(src);
  const Families fd = families_of(dst);
  const auto dst_major_sorted = sorted_copy(fd.majors);
  const auto dst_minor_sorted = sorted_copy(fd.minors);

  std::vector<IsoWitness> witnesses;
  for (int a : units(n)) {
    for (int b = 0; b < n; ++b) {
      const auto img_major = image_family(fs.majors, a, b, n);
      const auto img_minor = image_family(fs.minors, a, b, n);
      const auto img_major_sorted = sorted_copy(img_major);
      const auto img_minor_sorted = sorted_copy(img_minor);

      const bool preserving = img_major_sorted == dst_major_sorted &&
                              img_minor_sorted == dst_minor_sorted;
      const bool reversing = img_major_sorted == dst_minor_sorted &&
                             img_minor_sorted == dst_major_sorted;
      if (preserving) {
        const RootOffsets off =
            root_offsets(a, img_major, img_minor, fd.majors, fd.minors, n);
        witnesses.push_back(IsoWitness{make_affine(a, b, n),
                                       Orientation::Preserving,
                                       make_affine(a, off.major, n), off.minor,
                                       reversing});
      } else if (reversing) {
        const RootOffsets off =
            root_offsets(a, img_major, img_minor, fd.minors, fd.majors, n);
        witnesses.push_back(IsoWitness{make_affine(a, b, n),
                                       Orientation::Reversing,
                                       make_affine(a, off.major, n), off.minor,
                                       false});
      }
    }
  }
  return witnesses;
}

std::map<int, std::set<Orientation>> orientation_census(
    const HarmonicSystem& src, const HarmonicSystem& dst) {
  std::map<int, std::set<Orientation>> census;
  for (const IsoWitness& w : note_induced_isos(src, dst)) {
    census[w.map.a].insert(w.orientation);
  }
  return census;
}

std::string iso_mode_name(IsoMode mode) {
  return mode == IsoMode::Abstract ? "Abstract" : "NoteInduced";
}

std::string system_domain_name(SystemDomain domain) {
  return domain == SystemDomain::All ? "All" : "NonDegenerate";
}

OrbitPartition classify_orbits(int n, IsoMode mode, SystemDomain domain) {
  if (n < 2) {
    throw std::invalid_argument("classify_orbits: n must be at least 2, got " +
                                std::to_string(n));
  }
  std::map<std::string, std::vector<std::pair<int, int>>> buckets;
  for (const auto& [t, s] : domain_members(n, domain)) {
    const HarmonicSystem sys = make_system(n, t, s);
    const std::string key = mode == IsoMode::Abstract
                                ? canonical_certificate(build_graph(sys))
                                : family_orbit_key(sys);
    buckets[key].emplace_back(t, s);
  }

  OrbitPartition partition{n, mode, domain, {}};
  for (auto& [key, orbit] : buckets) {
    partition.orbits.push_back(std::move(orbit));  // already in (t, s) order
  }
  std::sort(partition.orbits.begin(), partition.orbits.end(),
            [](const auto& lhs, const auto& rhs) {
              return lhs.front() < rhs.front();
            });
  return partition;
}

std::string census_json(const OrbitPartition& partition) {
  bool flagged = false;
  nlohmann::ordered_json orbits = nlohmann::ordered_json::array();
  for (const auto& orbit : partition.orbits) {
    nlohmann::ordered_json members = nlohmann::ordered_json::array();
    for (const auto& [t, s] : orbit) {
      members.push_back({t, s});
      if (is_degenerate(make_system(partition.n, t, s))) flagged = true;
    }
    orbits.push_back(std::move(members));
  }
  nlohmann::ordered_json doc;
  doc["n"] = partition.n;
  doc["mode"] = iso_mode_name(partition.mode);
  doc["domain"] = system_domain_name(partition.domain);
  doc["orbits"] = std::move(orbits);
  doc["degenerate_members_flagged"] = flagged;
  return doc.dump(2);
}

EquivalenceComparison equivalences_coincide(int n) {
  const OrbitPartition abstract_census =
      classify_orbits(n, IsoMode::Abstract, SystemDomain::All);
  const OrbitPartition note_census =
      classify_orbits(n, IsoMode::NoteInduced, SystemDomain::All);

  EquivalenceComparison result;
  result.coincide = abstract_census.orbits == note_census.orbits;
  if (!result.coincide) {
    for (const auto& orbit : abstract_census.orbits) {
      if (std::find(note_census.orbits.begin(), note_census.orbits.end(),
                    orbit) == note_census.orbits.end()) {
        result.differences.push_back("Abstract only: " + orbit_display(orbit));
      }
    }
    for (const auto& orbit : note_census.orbits) {
      if (std::find(abstract_census.orbits.begin(),
                    abstract_census.orbits.end(),
                    orbit) == abstract_census.orbits.end()) {
        result.differences.push_back("NoteInduced only: " +
                                     orbit_display(orbit));
      }
    }
  }
  return result;
}

bool any_reversing_witness(const std::vector<HarmonicSystem>& systems) {
  for (const HarmonicSystem& src : systems) {
    for (const HarmonicSystem& dst : systems) {
      if (src.n != dst.n) continue;
      const int n = src.n;
      const Families fs = families_of(src);
      const Families fd = families_of(dst);
      const auto dst_major_sorted = sorted_copy(fd.majors);
      const auto dst_minor_sorted = sorted_copy(fd.minors);
      for (int a : units(n)) {
        for (int b = 0; b < n; ++b) {
          const auto img_major = sorted_copy(image_family(fs.majors, a, b, n));
          const auto img_minor = sorted_copy(image_family(fs.minors, a, b, n));
          if (img_major == dst_minor_sorted && img_minor == dst_major_sorted) {
            return true;
          }
        }
      }
    }
  }
  return false;
}

bool generators_stay_preserving(
    int n, const std::vector<std::pair<int, int>>& members) {
  const std::set<std::pair<int, int>> named(members.begin(), members.end());
  for (const auto& [t, s] : members) {
    for (int a : units(n)) {
      const std::pair<int, int> image{(a * t) % n, (a * s) % n};
      if (named.find(image) == named.end()) return false;
      const HarmonicSystem src = make_system(n, t, s);
      const HarmonicSystem dst = make_system(n, image.first, image.second);
      bool preserving_at_a = false;
      for (const IsoWitness& w : note_induced_isos(src, dst)) {
        if (w.map.a == a && w.orientation == Orientation::Preserving) {
          preserving_at_a = true;
          break;
        }
      }
      if (!preserving_at_a) return false;
    }
  }
  return true;
}

bool no_reversing_in_decaphonic() {
  return generators_stay_preserving(10, {{6, 5}, {8, 5}, {2, 5}, {4, 5}});
}

}  // namespace tonnetz
