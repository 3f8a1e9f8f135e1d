#include "tonnetz/harmony.hpp"

#include <gtest/gtest.h>

#include <set>
#include <stdexcept>

#include "table_fixtures.hpp"

using namespace tonnetz;

// ====== system construction ======

TEST(MakeSystem, DerivesGenerator) {
  EXPECT_EQ(make_system(12, 4, 3).q, 7);   // perfect fifth
  EXPECT_EQ(make_system(10, 6, 5).q, 1);   // decaphonic step
  EXPECT_EQ(make_system(12, 9, 8).q, 5);   // perfect fourth
  EXPECT_EQ(make_system(12, 5, 7).q, 0);   // wraps to zero, still constructible
}

TEST(MakeSystem, RejectsOutOfRangeIntervals) {
  EXPECT_THROW(make_system(1, 1, 1), std::invalid_argument);
  EXPECT_THROW(make_system(12, 0, 3), std::invalid_argument);
  EXPECT_THROW(make_system(12, 12, 3), std::invalid_argument);
  EXPECT_THROW(make_system(12, 4, 0), std::invalid_argument);
  EXPECT_THROW(make_system(12, 4, 12), std::invalid_argument);
}

TEST(IsDegenerate, GcdOfGeneratorWithModulus) {
  EXPECT_FALSE(is_degenerate(make_system(12, 4, 3)));
  EXPECT_TRUE(is_degenerate(make_system(12, 3, 3)));   // q = 6
  EXPECT_FALSE(is_degenerate(make_system(10, 6, 5)));
  EXPECT_TRUE(is_degenerate(make_system(12, 5, 7)));   // q = 0 counts as gcd = n
}

// ====== chords ======

TEST(ChordOp, KnownTriples) {
  EXPECT_EQ(chord(make_system(12, 9, 4), Quality::Major, 0).triple,
            (std::array<int, 3>{0, 9, 1}));
  EXPECT_EQ(chord(make_system(12, 4, 3), Quality::Minor, 0).triple,
            (std::array<int, 3>{0, 3, 7}));
  EXPECT_EQ(chord(make_system(10, 2, 5), Quality::Minor, 0).triple,
            (std::array<int, 3>{0, 5, 7}));
}

TEST(ChordOp, NormalizesRoot) {
  HarmonicSystem sys = make_system(12, 4, 3);
  EXPECT_EQ(chord(sys, Quality::Major, -1), chord(sys, Quality::Major, 11));
  EXPECT_EQ(chord(sys, Quality::Minor, 14), chord(sys, Quality::Minor, 2));
}

TEST(ChordOp, RepeatedEntriesWhenGeneratorVanishes) {
  Chord c = chord(make_system(12, 5, 7), Quality::Major, 2);  // q = 0
  EXPECT_EQ(c.triple, (std::array<int, 3>{2, 7, 2}));
  EXPECT_EQ(pitch_set(c).size(), 2u);
}

TEST(AllChords, CountAndOrder) {
  auto classical = all_chords(make_system(12, 4, 3));
  ASSERT_EQ(classical.size(), 24u);
  for (int r = 0; r < 12; ++r) {
    EXPECT_EQ(classical[r].quality, Quality::Major);
    EXPECT_EQ(classical[r].root, r);
    EXPECT_EQ(classical[12 + r].quality, Quality::Minor);
    EXPECT_EQ(classical[12 + r].root, r);
  }
  EXPECT_EQ(all_chords(make_system(10, 6, 5)).size(), 20u);
  EXPECT_EQ(all_chords(make_system(2, 1, 1)).size(), 4u);
}

// ====== neighbors ======

TEST(Neighbors, KnownRows) {
  HarmonicSystem classical = make_system(12, 4, 3);
  auto nb = neighbors(classical, chord(classical, Quality::Major, 0));
  EXPECT_EQ(nb[0], chord(classical, Quality::Minor, 0));
  EXPECT_EQ(nb[1], chord(classical, Quality::Minor, 4));
  EXPECT_EQ(nb[2], chord(classical, Quality::Minor, 9));

  HarmonicSystem anchor = make_system(12, 9, 4);
  auto nb94 = neighbors(anchor, chord(anchor, Quality::Major, 0));
  EXPECT_EQ(nb94[0].root, 0);
  EXPECT_EQ(nb94[1].root, 9);
  EXPECT_EQ(nb94[2].root, 8);

  HarmonicSystem deca = make_system(10, 6, 5);
  auto nb65 = neighbors(deca, chord(deca, Quality::Minor, 0));
  EXPECT_EQ(nb65[0], chord(deca, Quality::Major, 0));
  EXPECT_EQ(nb65[1], chord(deca, Quality::Major, 4));
  EXPECT_EQ(nb65[2], chord(deca, Quality::Major, 5));
}

TEST(Neighbors, RejectsForeignChord) {
  HarmonicSystem classical = make_system(12, 4, 3);
  Chord other = chord(make_system(12, 9, 4), Quality::Major, 0);
  EXPECT_THROW(neighbors(classical, other), std::invalid_argument);
}

TEST(Neighbors, AlwaysThreeOppositeQuality) {
  for (int n = 2; n <= 12; ++n) {
    for (int t = 1; t < n; ++t) {
      for (int s = 1; s < n; ++s) {
        HarmonicSystem sys = make_system(n, t, s);
        for (const Chord& c : all_chords(sys)) {
          for (const Chord& nb : neighbors(sys, c)) {
            EXPECT_EQ(nb.quality, opposite(c.quality));
          }
        }
      }
    }
  }
}

TEST(Neighbors, ReciprocityAcrossAllSmallSystems) {
  for (int n = 2; n <= 12; ++n) {
    for (int t = 1; t < n; ++t) {
      for (int s = 1; s < n; ++s) {
        HarmonicSystem sys = make_system(n, t, s);
        for (const Chord& c : all_chords(sys)) {
          for (const Chord& nb : neighbors(sys, c)) {
            auto back = neighbors(sys, nb);
            int mentions = 0;
            for (const Chord& b : back) {
              if (b == c) ++mentions;
            }
            EXPECT_GE(mentions, 1) << chord_name(c) << " missing from neighbors of "
                                   << chord_name(nb) << " in " << system_name(sys);
          }
        }
      }
    }
  }
}

TEST(Neighbors, SharedPitchPairsInNonDegenerateSystems) {
  // Adjacent chords share exactly two pitch classes whenever the system is
  // non-degenerate and the pitch-set decoration is injective. Injectivity is
  // required, not just distinct triples: for example (1,8) at n=10 has
  // 2t+s = 0, making every Major chord equal its L-neighbor as a set.
  for (int n : {10, 12}) {
    for (int t = 1; t < n; ++t) {
      for (int s = 1; s < n; ++s) {
        HarmonicSystem sys = make_system(n, t, s);
        if (is_degenerate(sys)) continue;
        std::set<std::set<int>> seen;
        bool injective = true;
        for (const Chord& c : all_chords(sys)) {
          std::set<int> ps = pitch_set(c);
          if (ps.size() != 3 || !seen.insert(ps).second) injective = false;
        }
        if (!injective) continue;
        for (const Chord& c : all_chords(sys)) {
          for (const Chord& nb : neighbors(sys, c)) {
            std::set<int> a = pitch_set(c);
            std::set<int> b = pitch_set(nb);
            std::vector<int> common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(common));
            EXPECT_EQ(common.size(), 2u)
                << chord_name(c) << " / " << chord_name(nb) << " in " << system_name(sys);
          }
        }
      }
    }
  }
}

// ====== reference tables ======

TEST(ReferenceTables, AllEightSystemsMatch) {
  std::vector<std::string> problems = tonnetz_tests::reference_table_mismatches();
  for (const std::string& p : problems) ADD_FAILURE() << p;
  EXPECT_TRUE(problems.empty());
}

// ====== inversion identities ======

TEST(InversionIdentities, MirrorFamiliesCoincideAsSets) {
  HarmonicSystem s43 = make_system(12, 4, 3);
  HarmonicSystem s98 = make_system(12, 9, 8);
  HarmonicSystem s94 = make_system(12, 9, 4);
  HarmonicSystem s83 = make_system(12, 8, 3);
  for (int k = 0; k < 12; ++k) {
    EXPECT_EQ(pitch_set(chord(s98, Quality::Major, k)),
              pitch_set(chord(s43, Quality::Major, k + 5)));
    EXPECT_EQ(pitch_set(chord(s98, Quality::Minor, k)),
              pitch_set(chord(s43, Quality::Minor, k + 5)));
    EXPECT_EQ(pitch_set(chord(s83, Quality::Major, k)),
              pitch_set(chord(s94, Quality::Major, k - 1)));
    EXPECT_EQ(pitch_set(chord(s83, Quality::Minor, k)),
              pitch_set(chord(s94, Quality::Minor, k - 1)));
  }
}

// ====== canonical system from a CRT basis ======

TEST(CanonicalSystem, AnchorsForBothTunings) {
  HarmonicSystem from12 = canonical_system(crt_decompose(12, {3, 4}));
  EXPECT_EQ(from12.t, 9);
  EXPECT_EQ(from12.s, 4);
  EXPECT_EQ(from12.q, 1);

  HarmonicSystem from10 = canonical_system(crt_decompose(10, {2, 5}));
  EXPECT_EQ(from10.t, 6);
  EXPECT_EQ(from10.s, 5);
  EXPECT_EQ(from10.q, 1);

  // Derived from the scan-oracle basis tones of 15 = 3 x 5: t = 6, s = 10.
  HarmonicSystem from15 = canonical_system(crt_decompose(15, {3, 5}));
  EXPECT_EQ(from15.t, 6);
  EXPECT_EQ(from15.s, 10);
  EXPECT_EQ(from15.q, 1);
}

TEST(CanonicalSystem, GeneratorIsAlwaysOne) {
  for (auto [n, factors] : std::vector<std::pair<int, std::vector<int>>>{
           {6, {2, 3}}, {12, {3, 4}}, {12, {4, 3}}, {10, {2, 5}}, {15, {3, 5}},
           {20, {4, 5}}, {21, {3, 7}}, {35, {5, 7}}}) {
    EXPECT_EQ(canonical_system(crt_decompose(n, factors)).q, 1);
  }
}

TEST(CanonicalSystem, RequiresExactlyTwoFactors) {
  EXPECT_THROW(canonical_system(crt_decompose(30, {2, 3, 5})), std::invalid_argument);
}
