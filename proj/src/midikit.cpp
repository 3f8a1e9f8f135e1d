#include "tonnetz/midikit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "tonnetz/harmony.hpp"
#include "tonnetz/zmod.hpp"

namespace tonnetz {

MidiParseError::MidiParseError(const std::string& message, std::size_t offset)
    : std::runtime_error(message + " (byte " + std::to_string(offset) + ")"),
      offset_(offset) {}

namespace {

constexpr std::uint32_t kVlqLimit = (1u << 28) - 1;

// Reader over a byte span with an explicit stop position, so track chunks
// cannot borrow bytes from their neighbors. All offsets reported in errors
// are absolute file positions.
struct Cursor {
  const std::vector<std::uint8_t>& bytes;
  std::size_t pos;
  std::size_t limit;

  std::size_t remaining() const { return limit - pos; }

  std::uint8_t u8(const char* what) {
    if (pos >= limit) {
      throw MidiParseError(std::string("truncated chunk: expected ") + what,
                           pos);
    }
    return bytes[pos++];
  }

  std::uint32_t u16(const char* what) {
    const std::uint32_t hi = u8(what);
    return (hi << 8) | u8(what);
  }

  std::uint32_t u32(const char* what) {
    const std::uint32_t hi = u16(what);
    return (hi << 16) | u16(what);
  }

  std::uint8_t data_byte(const char* what) {
    const std::size_t at = pos;
    const std::uint8_t value = u8(what);
    if (value & 0x80) {
      throw MidiParseError(std::string("malformed event: expected ") + what,
                           at);
    }
    return value;
  }

  std::uint32_t vlq(const char* what) {
    std::uint32_t value = 0;
    for (int i = 0; i < 4; ++i) {
      const std::uint8_t byte = u8(what);
      value = (value << 7) | (byte & 0x7Fu);
      if ((byte & 0x80) == 0) return value;
    }
    throw MidiParseError(
        std::string("variable-length quantity longer than four bytes in ") +
            what,
        pos - 4);
  }
};

bool matches_tag(const std::vector<std::uint8_t>& bytes, std::size_t at,
                 const char* tag) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (at + i >= bytes.size() || bytes[at + i] != static_cast<std::uint8_t>(tag[i])) {
      return false;
    }
  }
  return true;
}

MidiEvent other_event(long long tick, std::vector<std::uint8_t> raw) {
  MidiEvent e;
  e.tick = tick;
  e.kind = MidiEvent::Kind::Other;
  e.raw = std::move(raw);
  return e;
}

// Reads the events of one MTrk chunk. Returns through `track`; appends any
// note-matching oddities to `diagnostics`.
void parse_track(Cursor& in, std::size_t track_index, MidiTrack& track,
                 std::vector<std::string>& diagnostics) {
  long long tick = 0;
  int running_status = -1;
  bool ended = false;
  std::map<std::pair<int, int>, int> open_notes;

  while (in.pos < in.limit && !ended) {
    tick += in.vlq("delta time");

    std::uint8_t status;
    const std::size_t status_at = in.pos;
    const std::uint8_t first = in.u8("event status");
    if (first & 0x80) {
      status = first;
    } else if (running_status >= 0) {
      status = static_cast<std::uint8_t>(running_status);
      --in.pos;  // the byte belongs to the event's data
    } else {
      throw MidiParseError("data byte with no running status", status_at);
    }

    if (status < 0xF0) {
      running_status = status;
      const int type = status >> 4;
      const int channel = status & 0x0F;
      MidiEvent e;
      e.tick = tick;
      e.channel = channel;
      switch (type) {
        case 0x8: {
          e.kind = MidiEvent::Kind::NoteOff;
          e.key = in.data_byte("note key");
          e.velocity = in.data_byte("note velocity");
          break;
        }
        case 0x9: {
          e.key = in.data_byte("note key");
          e.velocity = in.data_byte("note velocity");
          // A note-on at velocity zero is the wire form of a note-off.
          e.kind = e.velocity == 0 ? MidiEvent::Kind::NoteOff
                                   : MidiEvent::Kind::NoteOn;
          break;
        }
        case 0xA:
        case 0xB:
        case 0xE: {
          const std::uint8_t d1 = in.data_byte("controller data");
          const std::uint8_t d2 = in.data_byte("controller data");
          e = other_event(tick, {status, d1, d2});
          break;
        }
        case 0xC:
        case 0xD: {
          const std::uint8_t d1 = in.data_byte("channel data");
          e = other_event(tick, {status, d1});
          break;
        }
        default:
          throw MidiParseError("unreachable channel status", status_at);
      }
      if (e.kind == MidiEvent::Kind::NoteOn) {
        ++open_notes[{e.channel, e.key}];
      } else if (e.kind == MidiEvent::Kind::NoteOff) {
        auto it = open_notes.find({e.channel, e.key});
        if (it == open_notes.end() || it->second == 0) {
          diagnostics.push_back(
              "track " + std::to_string(track_index) + ": note-off without "
              "note-on at tick " + std::to_string(tick) + " (channel " +
              std::to_string(e.channel) + ", key " + std::to_string(e.key) +
              ")");
        } else {
          --it->second;
        }
      }
      track.events.push_back(std::move(e));
    } else if (status == 0xF0 || status == 0xF7) {
      running_status = -1;
      const std::uint32_t length = in.vlq("sysex length");
      std::vector<std::uint8_t> raw{status};
      raw.reserve(1 + length);
      for (std::uint32_t i = 0; i < length; ++i) {
        raw.push_back(in.u8("sysex payload"));
      }
      track.events.push_back(other_event(tick, std::move(raw)));
    } else if (status == 0xFF) {
      running_status = -1;
      const std::uint8_t type = in.u8("meta type");
      const std::size_t length_at = in.pos;
      const std::uint32_t length = in.vlq("meta length");
      if (type == 0x51) {
        if (length != 3) {
          throw MidiParseError("malformed tempo event", length_at);
        }
        MidiEvent e;
        e.tick = tick;
        e.kind = MidiEvent::Kind::Tempo;
        const int b0 = in.u8("tempo payload");
        const int b1 = in.u8("tempo payload");
        const int b2 = in.u8("tempo payload");
        e.microseconds_per_quarter = (b0 << 16) | (b1 << 8) | b2;
        track.events.push_back(std::move(e));
      } else if (type == 0x2F) {
        if (length != 0) {
          throw MidiParseError("malformed end-of-track event", length_at);
        }
        ended = true;
      } else {
        std::vector<std::uint8_t> raw{0xFF, type};
        raw.reserve(2 + length);
        for (std::uint32_t i = 0; i < length; ++i) {
          raw.push_back(in.u8("meta payload"));
        }
        track.events.push_back(other_event(tick, std::move(raw)));
      }
    } else {
      throw MidiParseError(
          "unexpected status byte " + std::to_string(status), status_at);
    }
  }

  if (!ended) {
    diagnostics.push_back("track " + std::to_string(track_index) +
                          ": no end-of-track marker");
  }
  for (const auto& [where, count] : open_notes) {
    if (count > 0) {
      diagnostics.push_back(
          "track " + std::to_string(track_index) + ": note-on without "
          "note-off (channel " + std::to_string(where.first) + ", key " +
          std::to_string(where.second) + ")");
    }
  }
}

void write_u16(std::vector<std::uint8_t>& out, std::uint32_t value) {
  out.push_back(static_cast<std::uint8_t>(value >> 8));
  out.push_back(static_cast<std::uint8_t>(value));
}

void write_u32(std::vector<std::uint8_t>& out, std::uint32_t value) {
  write_u16(out, value >> 16);
  write_u16(out, value & 0xFFFFu);
}

void write_vlq(std::vector<std::uint8_t>& out, long long value) {
  if (value < 0 || value > static_cast<long long>(kVlqLimit)) {
    throw std::domain_error(
        "delta time " + std::to_string(value) +
        " exceeds the four-byte variable-length limit");
  }
  std::uint8_t digits[4];
  int count = 0;
  auto v = static_cast<std::uint32_t>(value);
  do {
    digits[count++] = static_cast<std::uint8_t>(v & 0x7Fu);
    v >>= 7;
  } while (v != 0);
  for (int i = count - 1; i > 0; --i) {
    out.push_back(static_cast<std::uint8_t>(digits[i] | 0x80u));
  }
  out.push_back(digits[0]);
}

// Folds a key into 0..127 by whole octaves. Returns whether it moved.
bool fold_key(int& key) {
  const int original = key;
  while (key > 127) key -= 12;
  while (key < 0) key += 12;
  return key != original;
}

int floor_div12(int p) { return p >= 0 ? p / 12 : -((-p + 11) / 12); }

int apply_policy(int key, const AffineMap& f, OctavePolicy policy) {
  const int block = floor_div12(key);
  const int pc = key - 12 * block;
  const int image_pc = affine_apply(f, pc);
  const int in_block = 12 * block + image_pc;
  if (policy == OctavePolicy::RegisterBlock) return in_block;
  // NearestImage: candidates differ by octaves; pick the closest, ties up.
  const int d = in_block - key;  // in (-12, 12)
  if (d >= 7) return in_block - 12;
  if (d <= -6) return in_block + 12;
  return in_block;
}

}  // namespace

MidiDocument parse_smf(const std::vector<std::uint8_t>& bytes) {
  if (!matches_tag(bytes, 0, "MThd")) {
    throw MidiParseError("malformed header: missing MThd magic", 0);
  }
  Cursor in{bytes, 4, bytes.size()};
  const std::uint32_t header_length = in.u32("header length");
  if (header_length < 6) {
    throw MidiParseError("malformed header: length below 6", 4);
  }
  const std::uint32_t format = in.u16("format");
  const std::uint32_t declared_tracks = in.u16("track count");
  const std::uint32_t division_raw = in.u16("division");
  if (format == 2) {
    throw MidiParseError("unsupported format 2", 8);
  }
  if (format > 2) {
    throw MidiParseError(
        "malformed header: unknown format " + std::to_string(format), 8);
  }
  if (division_raw & 0x8000u) {
    throw MidiParseError("SMPTE division is not supported", 12);
  }
  if (division_raw == 0) {
    throw MidiParseError("malformed header: division is zero", 12);
  }
  if (in.remaining() < header_length - 6) {
    throw MidiParseError("truncated chunk: header", in.pos);
  }
  in.pos += header_length - 6;

  MidiDocument doc;
  doc.format = static_cast<int>(format);
  doc.division = static_cast<int>(division_raw);

  while (doc.tracks.size() < declared_tracks) {
    if (in.remaining() < 8) {
      throw MidiParseError("truncated chunk: expected a track header",
                           in.pos);
    }
    const bool is_track = matches_tag(bytes, in.pos, "MTrk");
    in.pos += 4;
    const std::size_t length_at = in.pos;
    const std::uint32_t chunk_length = in.u32("chunk length");
    if (chunk_length > in.remaining()) {
      throw MidiParseError("truncated chunk: length runs past the file",
                           length_at);
    }
    const std::size_t chunk_end = in.pos + chunk_length;
    if (!is_track) {
      in.pos = chunk_end;  // alien chunk types are skipped, per the format
      continue;
    }
    Cursor body{bytes, in.pos, chunk_end};
    MidiTrack track;
    parse_track(body, doc.tracks.size(), track, doc.diagnostics);
    doc.tracks.push_back(std::move(track));
    in.pos = chunk_end;
  }
  return doc;
}

std::vector<std::uint8_t> write_smf(const MidiDocument& doc,
                                    int* keys_clamped) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), {'M', 'T', 'h', 'd'});
  write_u32(out, 6);
  write_u16(out, static_cast<std::uint32_t>(doc.format));
  write_u16(out, static_cast<std::uint32_t>(doc.tracks.size()));
  write_u16(out, static_cast<std::uint32_t>(doc.division));

  int clamped = 0;
  for (const MidiTrack& track : doc.tracks) {
    // Emit in time order; a stable sort keeps same-tick events as given.
    std::vector<const MidiEvent*> ordered;
    ordered.reserve(track.events.size());
    for (const MidiEvent& e : track.events) ordered.push_back(&e);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const MidiEvent* a, const MidiEvent* b) {
                       return a->tick < b->tick;
                     });

    std::vector<std::uint8_t> body;
    long long previous = 0;
    for (const MidiEvent* e : ordered) {
      write_vlq(body, e->tick - previous);
      previous = e->tick;
      switch (e->kind) {
        case MidiEvent::Kind::NoteOn:
        case MidiEvent::Kind::NoteOff: {
          int key = e->key;
          if (fold_key(key)) ++clamped;
          const std::uint8_t status = static_cast<std::uint8_t>(
              (e->kind == MidiEvent::Kind::NoteOn ? 0x90 : 0x80) |
              (e->channel & 0x0F));
          body.push_back(status);
          body.push_back(static_cast<std::uint8_t>(key));
          body.push_back(static_cast<std::uint8_t>(
              std::clamp(e->velocity, 0, 127)));
          break;
        }
        case MidiEvent::Kind::Tempo: {
          const int usec = e->microseconds_per_quarter;
          body.insert(body.end(), {0xFF, 0x51, 0x03});
          body.push_back(static_cast<std::uint8_t>((usec >> 16) & 0xFF));
          body.push_back(static_cast<std::uint8_t>((usec >> 8) & 0xFF));
          body.push_back(static_cast<std::uint8_t>(usec & 0xFF));
          break;
        }
        case MidiEvent::Kind::Other: {
          const std::vector<std::uint8_t>& raw = e->raw;
          if (raw.empty()) break;
          if (raw[0] == 0xFF) {
            body.push_back(0xFF);
            body.push_back(raw.size() > 1 ? raw[1] : 0);
            write_vlq(body, raw.size() > 2
                                ? static_cast<long long>(raw.size() - 2)
                                : 0);
            body.insert(body.end(), raw.begin() + std::min<std::size_t>(
                                        2, raw.size()),
                        raw.end());
          } else if (raw[0] == 0xF0 || raw[0] == 0xF7) {
            body.push_back(raw[0]);
            write_vlq(body, static_cast<long long>(raw.size() - 1));
            body.insert(body.end(), raw.begin() + 1, raw.end());
          } else {
            body.insert(body.end(), raw.begin(), raw.end());
          }
          break;
        }
      }
    }
    // Close the track at the time of its last event.
    body.push_back(0x00);
    body.insert(body.end(), {0xFF, 0x2F, 0x00});

    out.insert(out.end(), {'M', 'T', 'r', 'k'});
    write_u32(out, static_cast<std::uint32_t>(body.size()));
    out.insert(out.end(), body.begin(), body.end());
  }
  if (keys_clamped) *keys_clamped = clamped;
  return out;
}

MidiDocument transform_pitches(const MidiDocument& doc, const IsoWitness& w,
                               OctavePolicy policy, bool include_percussion,
                               int* keys_out_of_range) {
  if (w.map.n != 12) {
    throw std::invalid_argument(
        "transform_pitches: the witness must act on twelve pitch classes");
  }
  MidiDocument out = doc;
  int outside = 0;
  for (MidiTrack& track : out.tracks) {
    for (MidiEvent& e : track.events) {
      if (e.kind != MidiEvent::Kind::NoteOn &&
          e.kind != MidiEvent::Kind::NoteOff) {
        continue;
      }
      if (e.channel == 9 && !include_percussion) continue;
      e.key = apply_policy(e.key, w.map, policy);
      if (e.key < 0 || e.key > 127) ++outside;
    }
  }
  if (keys_out_of_range) *keys_out_of_range = outside;
  return out;
}

DecaScore render_deca_score(const ProgressionPath& path, Voicing voicing,
                            double tempo_bpm, double base_frequency) {
  if (voicing != Voicing::OpenSpread) {
    throw std::invalid_argument("render_deca_score: unknown voicing");
  }
  if (path.system.n != 10) {
    throw std::invalid_argument(
        "render_deca_score: the frequency law is for ten pitch classes");
  }
  if (!(tempo_bpm > 0.0) || !(base_frequency > 0.0)) {
    throw std::invalid_argument(
        "render_deca_score: tempo and base frequency must be positive");
  }
  if (const auto bad = validate_path(path.system, path.steps)) {
    throw std::invalid_argument(
        "render_deca_score: path breaks at transition " +
        std::to_string(*bad));
  }

  DecaScore score;
  score.base_frequency = base_frequency;
  score.tempo_bpm = tempo_bpm;
  const double beat_seconds = 60.0 / tempo_bpm;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const Chord c =
        chord(path.system, path.steps[i].quality, path.steps[i].root);
    // Root in the base octave, the other two tones an octave up, low to
    // high, so the chord spreads instead of clustering.
    int low = c.triple[1] + 10;
    int high = c.triple[2] + 10;
    if (low > high) std::swap(low, high);
    for (const int step : {c.triple[0], low, high}) {
      DecaEvent event;
      event.onset_seconds = static_cast<double>(i) * beat_seconds;
      event.duration_seconds = beat_seconds;
      event.step = step;
      event.frequency = base_frequency * std::exp2(step / 10.0);
      score.events.push_back(event);
    }
  }
  return score;
}

std::string deca_score_json(const DecaScore& score) {
  nlohmann::ordered_json doc;
  doc["base_frequency"] = score.base_frequency;
  doc["tempo"] = score.tempo_bpm;
  doc["events"] = nlohmann::ordered_json::array();
  for (const DecaEvent& event : score.events) {
    doc["events"].push_back({{"onset", event.onset_seconds},
                             {"duration", event.duration_seconds},
                             {"step", event.step},
                             {"frequency", event.frequency}});
  }
  return doc.dump(2);
}

}  // namespace tonnetz
