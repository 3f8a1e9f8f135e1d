#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tonnetz/isoclass.hpp"
#include "tonnetz/pathkit.hpp"

namespace tonnetz {

/// Parse failure with the byte offset where the input stopped making sense.
class MidiParseError : public std::runtime_error {
 public:
  MidiParseError(const std::string& message, std::size_t offset);

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// One timed track event. Note events are first-class so they can be
/// transformed; tempo changes are decoded so documents can be rendered in
/// seconds; everything else rides along opaquely and is re-emitted verbatim.
struct MidiEvent {
  enum class Kind { NoteOn, NoteOff, Tempo, Other };

  long long tick = 0;  // absolute time in ticks from the track start
  Kind kind = Kind::Other;

  // NoteOn / NoteOff. Keys normally sit in 0..127, but a transformed
  // document may briefly hold values beyond that; serialization folds them
  // back into range (see write_smf).
  int channel = 0;
  int key = 0;
  int velocity = 0;

  // Tempo.
  int microseconds_per_quarter = 500000;

  // Other: the event's own bytes with delta time and any length prefix
  // stripped. Channel messages store status plus data bytes; meta events
  // store 0xFF, the type byte, then the payload; sysex stores 0xF0/0xF7
  // then the payload. Length prefixes are re-encoded on write.
  std::vector<std::uint8_t> raw;

  friend bool operator==(const MidiEvent&, const MidiEvent&) = default;
};

struct MidiTrack {
  std::vector<MidiEvent> events;

  friend bool operator==(const MidiTrack&, const MidiTrack&) = default;
};

/// A decoded Standard MIDI File, formats 0 and 1.
struct MidiDocument {
  int format = 1;
  int division = 480;  // ticks per quarter note
  std::vector<MidiTrack> tracks;
  // Non-fatal oddities found while parsing, e.g. note-ons that never end.
  std::vector<std::string> diagnostics;

  friend bool operator==(const MidiDocument& a, const MidiDocument& b) {
    return a.format == b.format && a.division == b.division &&
           a.tracks == b.tracks;
  }
};

/// Decodes a format 0 or 1 file: running status, variable-length deltas,
/// note-on/off with velocity-0 note-ons normalized to note-offs, tempo
/// meta events, and opaque passthrough for everything else. End-of-track
/// markers are consumed, not stored; unknown chunk types are skipped.
/// Unmatched notes become diagnostics. Throws MidiParseError (with byte
/// offset) on a malformed header, a truncated chunk, an overlong
/// variable-length quantity, a SMPTE division, or format 2.
MidiDocument parse_smf(const std::vector<std::uint8_t>& bytes);

/// Serializes back to SMF bytes without running status, one end-of-track
/// per track. parse_smf(write_smf(doc)) reproduces doc event for event
/// whenever doc came from parse_smf (byte equality is not promised, event
/// equality is). Note keys outside 0..127 are shifted by whole octaves
/// into range; when keys_clamped is non-null it receives the count of
/// note events that needed the shift. Throws std::domain_error when an
/// event delta exceeds the four-byte variable-length limit (2^28 - 1
/// ticks).
std::vector<std::uint8_t> write_smf(const MidiDocument& doc,
                                    int* keys_clamped = nullptr);

/// How a transformed pitch class picks its octave.
enum class OctavePolicy {
  // Keep the 12-key block: p becomes 12 * floor(p / 12) + f(p mod 12).
  // Self-inverse under witness inversion, so transform-then-inverse is the
  // identity on every key.
  RegisterBlock,
  // Choose the key with the right pitch class closest to the original,
  // ties resolved upward.
  NearestImage,
};

/// Applies the witness's pitch-class map f(x) = a x + b (mod 12) to every
/// note key, leaving timing, velocity, tempo, and all other events alone.
/// Channel 9 (the General MIDI percussion channel) is skipped unless
/// include_percussion is set. Transformed keys may leave 0..127; they are
/// kept exact here so inverse transforms cancel, and folded into range
/// only by write_smf. When keys_out_of_range is non-null it receives the
/// count of transformed keys outside 0..127. Throws std::invalid_argument
/// when the witness modulus is not 12.
MidiDocument transform_pitches(const MidiDocument& doc, const IsoWitness& w,
                               OctavePolicy policy = OctavePolicy::RegisterBlock,
                               bool include_percussion = false,
                               int* keys_out_of_range = nullptr);

/// One sounding tone of a rendered decaphonic score. step counts tenths of
/// an octave from the base frequency: step = octave * 10 + pitch class.
struct DecaEvent {
  double onset_seconds = 0.0;
  double duration_seconds = 0.0;
  int step = 0;
  double frequency = 0.0;

  friend bool operator==(const DecaEvent&, const DecaEvent&) = default;
};

/// A frequency score for ten-tone music: every event's frequency obeys
/// frequency = base_frequency * 2^(step/10), making one step exactly 120
/// cents and ten steps exactly one octave.
struct DecaScore {
  double base_frequency = 264.0;
  double tempo_bpm = 120.0;
  std::vector<DecaEvent> events;
};

/// Chord spelling for rendered scores.
enum class Voicing {
  // Root in the base octave (step = root), the other two chord tones in
  // the next octave up (step = tone + 10), ascending.
  OpenSpread,
};

/// Renders a ten-tone progression as simultaneous frequency events, one
/// chord per beat at the given tempo, each chord sounding for a full beat.
/// Throws std::invalid_argument when the path's modulus is not 10, when
/// the path fails validation, or when tempo or base frequency is not
/// positive.
DecaScore render_deca_score(const ProgressionPath& path,
                            Voicing voicing = Voicing::OpenSpread,
                            double tempo_bpm = 120.0,
                            double base_frequency = 264.0);

/// Two-space indented JSON:
///   {"base_frequency":, "tempo":, "events": [{"onset":, "duration":,
///    "step":, "frequency":}, ...]}
std::string deca_score_json(const DecaScore& score);

}  // namespace tonnetz
