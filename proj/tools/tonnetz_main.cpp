#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "tonnetz/harmony.hpp"
#include "tonnetz/isoclass.hpp"
#include "tonnetz/levigraph.hpp"
#include "tonnetz/midikit.hpp"
#include "tonnetz/pathkit.hpp"
#include "tonnetz/zmod.hpp"

namespace {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Small I/O helpers. Empty path means the standard stream, so every JSON
// command can sit in a shell pipeline.

std::string read_text(const std::string& path) {
  if (path.empty()) {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::uint8_t> read_binary(const std::string& path) {
  const std::string text = read_text(path);
  return std::vector<std::uint8_t>(text.begin(), text.end());
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
  if (!out) throw std::runtime_error("failed writing " + path);
}

void write_binary(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path);
}

void emit_json(const ordered_json& doc) { std::cout << doc.dump(2) << '\n'; }

// "t,s" flag values. Format problems are argument errors, not domain errors,
// so they surface as std::runtime_error and exit with the parse code.
std::pair<int, int> parse_system_pair(const std::string& text,
                                      const std::string& flag) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 == text.size()) {
    throw std::runtime_error(flag + " expects a t,s pair such as 6,5");
  }
  try {
    const int t = std::stoi(text.substr(0, comma));
    const int s = std::stoi(text.substr(comma + 1));
    return {t, s};
  } catch (const std::exception&) {
    throw std::runtime_error(flag + " expects a t,s pair such as 6,5");
  }
}

// The TONNETZ_FORMAT environment variable supplies the default for --format
// flags; values that a given subcommand does not support are ignored.
std::string default_format(const std::string& fallback,
                           std::initializer_list<const char*> allowed) {
  const char* raw = std::getenv("TONNETZ_FORMAT");
  if (raw == nullptr) return fallback;
  for (const char* candidate : allowed) {
    if (std::string(candidate) == raw) return raw;
  }
  return fallback;
}

ordered_json system_json(const tonnetz::HarmonicSystem& sys) {
  return ordered_json{{"n", sys.n},
                      {"t", sys.t},
                      {"s", sys.s},
                      {"q", sys.q},
                      {"name", tonnetz::system_name(sys)}};
}

ordered_json chord_json(const tonnetz::Chord& c) {
  ordered_json doc;
  doc["name"] = tonnetz::chord_name(c);
  doc["quality"] = std::string(1, tonnetz::quality_letter(c.quality));
  doc["root"] = c.root;
  doc["triple"] = c.triple;
  doc["pitches"] = tonnetz::pitch_set(c);
  return doc;
}

std::string chord_line(const tonnetz::Chord& c) {
  std::ostringstream out;
  out << tonnetz::chord_name(c) << " = {" << c.triple[0] << ", " << c.triple[1]
      << ", " << c.triple[2] << "}";
  return out.str();
}

ordered_json witness_json(const tonnetz::IsoWitness& w) {
  ordered_json doc;
  doc["a"] = w.map.a;
  doc["b"] = w.map.b;
  doc["orientation"] = tonnetz::orientation_name(w.orientation);
  doc["major_root_offset"] = w.root_map.b;
  doc["minor_root_offset"] = w.minor_root_offset;
  doc["self_dual"] = w.self_dual;
  return doc;
}

tonnetz::IsoMode parse_mode(const std::string& text) {
  if (text == "abstract") return tonnetz::IsoMode::Abstract;
  if (text == "note-induced") return tonnetz::IsoMode::NoteInduced;
  throw std::runtime_error("--mode expects abstract or note-induced");
}

tonnetz::SystemDomain parse_domain(const std::string& text) {
  if (text == "all") return tonnetz::SystemDomain::All;
  if (text == "nondegenerate") return tonnetz::SystemDomain::NonDegenerate;
  throw std::runtime_error("--domain expects all or nondegenerate");
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

void run_decompose(int n, const std::vector<int>& factors) {
  const tonnetz::CrtBasis basis = tonnetz::crt_decompose(n, factors);
  ordered_json doc;
  doc["n"] = basis.n;
  doc["factors"] = basis.factors;
  doc["basis_tones"] = basis.basis_tones;
  if (factors.size() == 2) {
    doc["canonical_system"] = system_json(tonnetz::canonical_system(basis));
  }
  emit_json(doc);
}

void run_chords(int n, int t, int s, const std::string& format) {
  const tonnetz::HarmonicSystem sys = tonnetz::make_system(n, t, s);
  const std::vector<tonnetz::Chord> chords = tonnetz::all_chords(sys);
  if (format == "table") {
    std::cout << "system " << tonnetz::system_name(sys) << " over Z" << sys.n
              << "\n";
    for (const tonnetz::Chord& c : chords) std::cout << chord_line(c) << "\n";
    return;
  }
  ordered_json doc;
  doc["system"] = system_json(sys);
  doc["chords"] = ordered_json::array();
  for (const tonnetz::Chord& c : chords) doc["chords"].push_back(chord_json(c));
  emit_json(doc);
}

void run_neighbors(int n, int t, int s, const std::string& quality, int root,
                   const std::string& format) {
  const tonnetz::HarmonicSystem sys = tonnetz::make_system(n, t, s);
  const tonnetz::Quality q =
      quality == "M" ? tonnetz::Quality::Major : tonnetz::Quality::Minor;
  const tonnetz::Chord center = tonnetz::chord(sys, q, root);
  const std::array<tonnetz::Chord, 3> around = tonnetz::neighbors(sys, center);
  static constexpr char kColors[3] = {'P', 'L', 'R'};
  if (format == "table") {
    std::cout << chord_line(center) << " in " << tonnetz::system_name(sys)
              << " over Z" << sys.n << "\n";
    for (int i = 0; i < 3; ++i) {
      std::cout << kColors[i] << " -> " << chord_line(around[i]) << "\n";
    }
    return;
  }
  ordered_json doc;
  doc["system"] = system_json(sys);
  doc["chord"] = chord_json(center);
  doc["neighbors"] = ordered_json::array();
  for (int i = 0; i < 3; ++i) {
    ordered_json entry = chord_json(around[i]);
    ordered_json labeled;
    labeled["color"] = std::string(1, kColors[i]);
    labeled.update(entry);
    doc["neighbors"].push_back(std::move(labeled));
  }
  emit_json(doc);
}

void run_graph(int n, int t, int s, const std::string& format) {
  const tonnetz::StructuredLeviGraph g =
      tonnetz::build_graph(tonnetz::make_system(n, t, s));
  if (format == "json") {
    std::cout << tonnetz::to_json(g) << '\n';
  } else {
    std::cout << tonnetz::to_dot(g);
  }
}

void run_iso(int n, const std::string& src_text, const std::string& dst_text) {
  const auto [st, ss] = parse_system_pair(src_text, "--src");
  const auto [dt, ds] = parse_system_pair(dst_text, "--dst");
  const tonnetz::HarmonicSystem src = tonnetz::make_system(n, st, ss);
  const tonnetz::HarmonicSystem dst = tonnetz::make_system(n, dt, ds);
  const std::vector<tonnetz::IsoWitness> witnesses =
      tonnetz::note_induced_isos(src, dst);
  ordered_json doc;
  doc["n"] = n;
  doc["src"] = system_json(src);
  doc["dst"] = system_json(dst);
  doc["witnesses"] = ordered_json::array();
  for (const tonnetz::IsoWitness& w : witnesses) {
    doc["witnesses"].push_back(witness_json(w));
  }
  emit_json(doc);
}

void run_orbits(int n, const std::string& mode_text,
                const std::string& domain_text, const std::string& format) {
  const tonnetz::OrbitPartition partition = tonnetz::classify_orbits(
      n, parse_mode(mode_text), parse_domain(domain_text));
  if (format == "table") {
    std::cout << "n=" << partition.n
              << " mode=" << tonnetz::iso_mode_name(partition.mode)
              << " domain=" << tonnetz::system_domain_name(partition.domain)
              << "\n";
    int index = 1;
    for (const auto& orbit : partition.orbits) {
      std::cout << "orbit " << index++ << " (" << orbit.size() << " members):";
      for (const auto& [t, s] : orbit) {
        std::cout << " (" << t << "," << s << ")";
      }
      std::cout << "\n";
    }
    return;
  }
  std::cout << tonnetz::census_json(partition) << '\n';
}

// One line per claim; the command exits nonzero when any line fails, so a
// single invocation reproduces the structural results end to end.
int run_check_theorems() {
  int failures = 0;
  const auto report = [&failures](bool ok, const std::string& label) {
    std::cout << (ok ? "PASS  " : "FAIL  ") << label << "\n";
    if (!ok) ++failures;
  };

  // Canonical anchors from the two CRT decompositions.
  {
    const tonnetz::CrtBasis twelve = tonnetz::crt_decompose(12, {3, 4});
    const tonnetz::HarmonicSystem anchor12 = tonnetz::canonical_system(twelve);
    report(twelve.basis_tones == std::vector<int>{4, 9} && anchor12.t == 9 &&
               anchor12.s == 4,
           "factors {3,4} of Z12 give basis tones (4,9) and anchor (9,4)");
    const tonnetz::CrtBasis ten = tonnetz::crt_decompose(10, {2, 5});
    const tonnetz::HarmonicSystem anchor10 = tonnetz::canonical_system(ten);
    report(ten.basis_tones == std::vector<int>{5, 6} && anchor10.t == 6 &&
               anchor10.s == 5,
           "factors {2,5} of Z10 give basis tones (5,6) and anchor (6,5)");
  }

  // The four advertised twelve-tone witnesses.
  {
    struct Expected {
      std::pair<int, int> src, dst;
      int a, b;
      tonnetz::Orientation orientation;
    };
    const Expected table[] = {
        {{4, 3}, {8, 3}, 5, 0, tonnetz::Orientation::Preserving},
        {{4, 3}, {9, 4}, 5, 1, tonnetz::Orientation::Preserving},
        {{4, 3}, {9, 8}, 11, 0, tonnetz::Orientation::Reversing},
        {{8, 3}, {9, 8}, 7, 0, tonnetz::Orientation::Reversing},
    };
    for (const Expected& row : table) {
      const auto witnesses = tonnetz::note_induced_isos(
          tonnetz::make_system(12, row.src.first, row.src.second),
          tonnetz::make_system(12, row.dst.first, row.dst.second));
      bool found = false;
      for (const tonnetz::IsoWitness& w : witnesses) {
        if (w.map.a == row.a && w.map.b == row.b &&
            w.orientation == row.orientation) {
          found = true;
          break;
        }
      }
      std::ostringstream label;
      label << "witness x -> " << row.a << "x+" << row.b << " carries ("
            << row.src.first << "," << row.src.second << ") onto ("
            << row.dst.first << "," << row.dst.second << ") "
            << (row.orientation == tonnetz::Orientation::Preserving
                    ? "preserving quality"
                    : "exchanging quality");
      report(found, label.str());
    }
  }

  // Orbit structure: each named quartet, folded to unordered {t,s} classes,
  // is exactly the advertised family in both classification modes.
  {
    const auto folded_orbit_of = [](int n, tonnetz::IsoMode mode, int t,
                                    int s) {
      const tonnetz::OrbitPartition partition = tonnetz::classify_orbits(
          n, mode, tonnetz::SystemDomain::NonDegenerate);
      std::set<std::pair<int, int>> classes;
      for (const auto& orbit : partition.orbits) {
        for (const auto& member : orbit) {
          if (member == std::make_pair(t, s)) {
            for (const auto& [mt, ms] : orbit) {
              classes.emplace(std::min(mt, ms), std::max(mt, ms));
            }
            return classes;
          }
        }
      }
      return classes;
    };
    const std::set<std::pair<int, int>> twelve = {
        {3, 4}, {3, 8}, {4, 9}, {8, 9}};
    const std::set<std::pair<int, int>> ten = {{5, 6}, {5, 8}, {2, 5}, {4, 5}};
    report(folded_orbit_of(12, tonnetz::IsoMode::Abstract, 4, 3) == twelve,
           "abstract orbit of (4,3) in Z12 is the quartet "
           "{(4,3),(8,3),(9,4),(9,8)} up to t,s swaps");
    report(folded_orbit_of(12, tonnetz::IsoMode::NoteInduced, 4, 3) == twelve,
           "note-induced orbit of (4,3) in Z12 is the same quartet");
    report(folded_orbit_of(10, tonnetz::IsoMode::Abstract, 6, 5) == ten,
           "abstract orbit of (6,5) in Z10 is the quartet "
           "{(6,5),(8,5),(2,5),(4,5)} up to t,s swaps");
    report(folded_orbit_of(10, tonnetz::IsoMode::NoteInduced, 6, 5) == ten,
           "note-induced orbit of (6,5) in Z10 is the same quartet");
  }

  // Decaphonic multiplier closure: scaling (6,5) by each unit of Z10 lands
  // on a named member through a quality-preserving witness.
  {
    const tonnetz::HarmonicSystem base = tonnetz::make_system(10, 6, 5);
    const std::pair<int, std::pair<int, int>> images[] = {
        {1, {6, 5}}, {3, {8, 5}}, {7, {2, 5}}, {9, {4, 5}}};
    for (const auto& [a, image] : images) {
      const auto witnesses = tonnetz::note_induced_isos(
          base, tonnetz::make_system(10, image.first, image.second));
      bool preserving = false;
      for (const tonnetz::IsoWitness& w : witnesses) {
        if (w.map.a == a && w.map.b == 0 &&
            w.orientation == tonnetz::Orientation::Preserving) {
          preserving = true;
          break;
        }
      }
      std::ostringstream label;
      label << "multiplier " << a << " carries (6,5) onto (" << image.first
            << "," << image.second << ") preserving quality";
      report(preserving, label.str());
    }
    report(tonnetz::no_reversing_in_decaphonic(),
           "every generating multiplier of the decaphonic quartet preserves "
           "quality");
  }

  // The two classification notions agree wholesale at both moduli.
  report(tonnetz::equivalences_coincide(12).coincide,
         "abstract and note-induced censuses coincide at n=12");
  report(tonnetz::equivalences_coincide(10).coincide,
         "abstract and note-induced censuses coincide at n=10");

  // The bundled decaphonic miniature is a closed, valid walk.
  {
    const tonnetz::ProgressionPath walk = tonnetz::miniature();
    const auto offense = tonnetz::validate_path(walk.system, walk.steps);
    const bool closed = walk.steps.front() == walk.steps.back();
    report(!offense.has_value() && closed,
           "the 17-chord decaphonic miniature is a valid closed progression");
  }

  std::cout << (failures == 0 ? "all checks passed"
                              : std::to_string(failures) + " check(s) failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}

void run_validate_path(const std::string& path_file) {
  const tonnetz::ProgressionPath path =
      tonnetz::path_from_json(read_text(path_file));
  const std::optional<std::size_t> offense =
      tonnetz::validate_path(path.system, path.steps);
  ordered_json doc;
  doc["system"] = system_json(path.system);
  doc["steps"] = path.steps.size();
  doc["valid"] = !offense.has_value();
  if (offense.has_value()) {
    const tonnetz::PathStep& from = path.steps[*offense];
    const tonnetz::PathStep& to = path.steps[*offense + 1];
    doc["first_offense"] = *offense;
    std::ostringstream detail;
    detail << tonnetz::chord_name(
                  tonnetz::chord(path.system, from.quality, from.root))
           << " does not neighbor "
           << tonnetz::chord_name(
                  tonnetz::chord(path.system, to.quality, to.root));
    doc["detail"] = detail.str();
  } else {
    doc["first_offense"] = nullptr;
    doc["detail"] = nullptr;
  }
  emit_json(doc);
}

void run_transport_path(const std::string& path_file,
                        const std::string& dst_text, int a, int b,
                        const std::string& out_file) {
  const tonnetz::ProgressionPath path =
      tonnetz::path_from_json(read_text(path_file));
  const auto [dt, ds] = parse_system_pair(dst_text, "--dst");
  const tonnetz::HarmonicSystem dst =
      tonnetz::make_system(path.system.n, dt, ds);
  const std::vector<tonnetz::IsoWitness> witnesses =
      tonnetz::note_induced_isos(path.system, dst);
  const int wanted_b = tonnetz::mod_norm(b, path.system.n);
  const tonnetz::IsoWitness* chosen = nullptr;
  for (const tonnetz::IsoWitness& w : witnesses) {
    if (w.map.a == a && w.map.b == wanted_b) {
      chosen = &w;
      break;
    }
  }
  if (chosen == nullptr) {
    std::ostringstream message;
    message << "x -> " << a << "x+" << wanted_b << " does not carry "
            << tonnetz::system_name(path.system) << " onto "
            << tonnetz::system_name(dst) << " at n=" << path.system.n;
    throw std::invalid_argument(message.str());
  }
  const tonnetz::ProgressionPath moved =
      tonnetz::transport_path(*chosen, path, dst);
  write_text(out_file, tonnetz::path_to_json(moved));
}

void run_transform_midi(const std::string& in_file, const std::string& out_file,
                        int a, int b, const std::string& policy_text,
                        bool include_percussion) {
  const tonnetz::MidiDocument doc = tonnetz::parse_smf(read_binary(in_file));
  tonnetz::IsoWitness witness;
  witness.map = tonnetz::make_affine(a, b, 12);
  witness.root_map = tonnetz::make_affine(a, 0, 12);
  const tonnetz::OctavePolicy policy = policy_text == "nearest-image"
                                           ? tonnetz::OctavePolicy::NearestImage
                                           : tonnetz::OctavePolicy::RegisterBlock;
  int outside = 0;
  const tonnetz::MidiDocument moved = tonnetz::transform_pitches(
      doc, witness, policy, include_percussion, &outside);
  int clamped = 0;
  write_binary(out_file, tonnetz::write_smf(moved, &clamped));

  int note_events = 0;
  for (const tonnetz::MidiTrack& track : doc.tracks) {
    for (const tonnetz::MidiEvent& event : track.events) {
      if (event.kind == tonnetz::MidiEvent::Kind::NoteOn ||
          event.kind == tonnetz::MidiEvent::Kind::NoteOff) {
        ++note_events;
      }
    }
  }
  ordered_json summary;
  summary["input"] = in_file;
  summary["output"] = out_file;
  summary["map"] = ordered_json{{"a", witness.map.a}, {"b", witness.map.b}};
  summary["policy"] =
      policy == tonnetz::OctavePolicy::RegisterBlock ? "register-block"
                                                     : "nearest-image";
  summary["include_percussion"] = include_percussion;
  summary["note_events"] = note_events;
  summary["keys_out_of_range"] = outside;
  summary["keys_clamped"] = clamped;
  summary["diagnostics"] = doc.diagnostics;
  emit_json(summary);
}

void run_deca_score(const std::string& path_file, double base_freq,
                    double tempo, const std::string& out_file) {
  const tonnetz::ProgressionPath path =
      tonnetz::path_from_json(read_text(path_file));
  const tonnetz::DecaScore score = tonnetz::render_deca_score(
      path, tonnetz::Voicing::OpenSpread, tempo, base_freq);
  write_text(out_file, tonnetz::deca_score_json(score));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized (t,s) harmonic systems over Z_n: chords, Levi "
               "graphs, affine classification, and path/MIDI transport"};
  app.require_subcommand(1);
  int exit_code = 0;

  // decompose
  int dec_n = 0;
  std::vector<int> dec_factors;
  auto* decompose =
      app.add_subcommand("decompose", "CRT basis tones and the anchor system");
  decompose->add_option("--n", dec_n, "modulus")->required();
  decompose
      ->add_option("--factors", dec_factors,
                   "pairwise coprime factors, comma separated (e.g. 3,4)")
      ->required()
      ->delimiter(',');
  decompose->callback([&] { run_decompose(dec_n, dec_factors); });

  // chords
  int ch_n = 0, ch_t = 0, ch_s = 0;
  std::string ch_format = default_format("json", {"json", "table"});
  auto* chords =
      app.add_subcommand("chords", "all 2n chords of a (t,s) system");
  chords->add_option("--n", ch_n, "modulus")->required();
  chords->add_option("--t", ch_t, "major interval")->required();
  chords->add_option("--s", ch_s, "minor interval")->required();
  chords->add_option("--format", ch_format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  chords->callback([&] { run_chords(ch_n, ch_t, ch_s, ch_format); });

  // neighbors
  int nb_n = 0, nb_t = 0, nb_s = 0, nb_root = 0;
  std::string nb_quality;
  std::string nb_format = default_format("json", {"json", "table"});
  auto* neighbors = app.add_subcommand(
      "neighbors", "the three opposite-quality neighbors of one chord");
  neighbors->add_option("--n", nb_n, "modulus")->required();
  neighbors->add_option("--t", nb_t, "major interval")->required();
  neighbors->add_option("--s", nb_s, "minor interval")->required();
  neighbors->add_option("--quality", nb_quality, "M or m")
      ->required()
      ->check(CLI::IsMember({"M", "m"}));
  neighbors->add_option("--root", nb_root, "chord root")->required();
  neighbors->add_option("--format", nb_format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  neighbors->callback(
      [&] { run_neighbors(nb_n, nb_t, nb_s, nb_quality, nb_root, nb_format); });

  // graph
  int gr_n = 0, gr_t = 0, gr_s = 0;
  std::string gr_format = default_format("dot", {"dot", "json"});
  auto* graph =
      app.add_subcommand("graph", "structured Levi graph of a system");
  graph->add_option("--n", gr_n, "modulus")->required();
  graph->add_option("--t", gr_t, "major interval")->required();
  graph->add_option("--s", gr_s, "minor interval")->required();
  graph->add_option("--format", gr_format, "dot or json")
      ->check(CLI::IsMember({"dot", "json"}));
  graph->callback([&] { run_graph(gr_n, gr_t, gr_s, gr_format); });

  // iso
  int iso_n = 0;
  std::string iso_src, iso_dst;
  auto* iso = app.add_subcommand(
      "iso", "all affine note maps carrying one system onto another");
  iso->add_option("--n", iso_n, "modulus")->required();
  iso->add_option("--src", iso_src, "source system as t,s")->required();
  iso->add_option("--dst", iso_dst, "target system as t,s")->required();
  iso->callback([&] { run_iso(iso_n, iso_src, iso_dst); });

  // orbits
  int orb_n = 0;
  std::string orb_mode = "abstract";
  std::string orb_domain = "all";
  std::string orb_format = default_format("json", {"json", "table"});
  auto* orbits =
      app.add_subcommand("orbits", "equivalence census of all (t,s) systems");
  orbits->add_option("--n", orb_n, "modulus")->required();
  orbits->add_option("--mode", orb_mode, "abstract or note-induced")
      ->check(CLI::IsMember({"abstract", "note-induced"}));
  orbits->add_option("--domain", orb_domain, "all or nondegenerate")
      ->check(CLI::IsMember({"all", "nondegenerate"}));
  orbits->add_option("--format", orb_format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  orbits->callback(
      [&] { run_orbits(orb_n, orb_mode, orb_domain, orb_format); });

  // check-theorems
  auto* check = app.add_subcommand(
      "check-theorems",
      "verify the structural results (witnesses, orbits, censuses, miniature)");
  check->callback([&] { exit_code = run_check_theorems(); });

  // validate-path
  std::string vp_path;
  auto* validate = app.add_subcommand(
      "validate-path", "check a progression path against its system");
  validate->add_option("--path", vp_path,
                       "path JSON file (stdin when omitted)");
  validate->callback([&] { run_validate_path(vp_path); });

  // transport-path
  std::string tp_path, tp_dst, tp_out;
  int tp_a = 1, tp_b = 0;
  auto* transport = app.add_subcommand(
      "transport-path", "carry a path to another system along a note map");
  transport->add_option("--path", tp_path,
                        "path JSON file (stdin when omitted)");
  transport->add_option("--dst", tp_dst, "target system as t,s")->required();
  transport->add_option("--a", tp_a, "multiplier of the note map")->required();
  transport->add_option("--b", tp_b, "offset of the note map")->required();
  transport->add_option("--out", tp_out, "output file (stdout when omitted)");
  transport->callback(
      [&] { run_transport_path(tp_path, tp_dst, tp_a, tp_b, tp_out); });

  // transform-midi
  std::string tm_in, tm_out;
  int tm_a = 1, tm_b = 0;
  std::string tm_policy = "register-block";
  bool tm_percussion = false;
  auto* transform = app.add_subcommand(
      "transform-midi", "apply an affine pitch-class map to a MIDI file");
  transform->add_option("--in", tm_in, "input .mid file")->required();
  transform->add_option("--out", tm_out, "output .mid file")->required();
  transform->add_option("--a", tm_a, "multiplier, coprime to 12")->required();
  transform->add_option("--b", tm_b, "offset")->required();
  transform->add_option("--policy", tm_policy,
                        "octave policy: register-block or nearest-image")
      ->check(CLI::IsMember({"register-block", "nearest-image"}));
  transform->add_flag("--include-percussion", tm_percussion,
                      "also transform channel 9");
  transform->callback([&] {
    run_transform_midi(tm_in, tm_out, tm_a, tm_b, tm_policy, tm_percussion);
  });

  // deca-score
  std::string ds_path, ds_out;
  double ds_base = 264.0, ds_tempo = 120.0;
  auto* deca = app.add_subcommand(
      "deca-score", "render a decaphonic path as a 10-TET frequency score");
  deca->add_option("--path", ds_path, "path JSON file (stdin when omitted)");
  deca->add_option("--base-freq", ds_base, "frequency of step 0 in Hz");
  deca->add_option("--tempo", ds_tempo, "beats per minute");
  deca->add_option("--out", ds_out, "output file (stdout when omitted)");
  deca->callback([&] { run_deca_score(ds_path, ds_base, ds_tempo, ds_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const tonnetz::MidiParseError& e) {
    std::cerr << "tonnetz: " << e.what() << " (offset " << e.offset() << ")\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "tonnetz: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "tonnetz: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "tonnetz: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
