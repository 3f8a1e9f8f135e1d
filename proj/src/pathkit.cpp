#include "tonnetz/pathkit.hpp"

#include <array>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "tonnetz/zmod.hpp"

namespace tonnetz {

namespace {

void check_steps(const HarmonicSystem& sys,
                 const std::vector<PathStep>& steps) {
  if (steps.empty()) {
    throw std::invalid_argument("path needs at least one step");
  }
  for (const PathStep& step : steps) {
    if (step.root < 0 || step.root >= sys.n) {
      throw std::invalid_argument(
          "path root " + std::to_string(step.root) +
          " out of range for n = " + std::to_string(sys.n));
    }
  }
}

}  // namespace

std::string path_name(const ProgressionPath& path) {
  std::ostringstream out;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    if (i > 0) out << " -> ";
    out << quality_letter(path.steps[i].quality) << path.steps[i].root;
  }
  return out.str();
}

std::optional<std::size_t> validate_path(const HarmonicSystem& sys,
                                         const std::vector<PathStep>& steps) {
  check_steps(sys, steps);
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    const Chord current = chord(sys, steps[i].quality, steps[i].root);
    bool adjacent = false;
    for (const Chord& candidate : neighbors(sys, current)) {
      if (candidate.quality == steps[i + 1].quality &&
          candidate.root == steps[i + 1].root) {
        adjacent = true;
        break;
      }
    }
    if (!adjacent) return i;
  }
  return std::nullopt;
}

ProgressionPath transport_path(const IsoWitness& w,
                               const ProgressionPath& path,
                               const HarmonicSystem& dst) {
  if (w.map.n != path.system.n || dst.n != path.system.n) {
    throw std::invalid_argument(
        "transport_path: witness, path, and destination must share a "
        "modulus");
  }
  if (const auto bad = validate_path(path.system, path.steps)) {
    throw std::invalid_argument(
        "transport_path: source path already breaks at transition " +
        std::to_string(*bad));
  }

  const bool flip = w.orientation == Orientation::Reversing;
  ProgressionPath carried;
  carried.system = dst;
  carried.steps.reserve(path.steps.size());
  for (const PathStep& step : path.steps) {
    const int offset =
        step.quality == Quality::Major ? w.root_map.b : w.minor_root_offset;
    PathStep moved;
    moved.quality = flip ? opposite(step.quality) : step.quality;
    moved.root = (w.root_map.a * step.root + offset) % path.system.n;

    // The moved chord must hold exactly the pitch image of the source
    // chord; anything else means w is not a witness onto dst.
    std::set<int> image;
    for (int p : pitch_set(chord(path.system, step.quality, step.root))) {
      image.insert(affine_apply(w.map, p));
    }
    const Chord target = chord(dst, moved.quality, moved.root);
    if (image != pitch_set(target)) {
      throw std::invalid_argument(
          "transport_path: witness does not carry " +
          chord_name(chord(path.system, step.quality, step.root)) +
          " onto a chord of " + system_name(dst));
    }
    carried.steps.push_back(moved);
  }

  if (const auto bad = validate_path(dst, carried.steps)) {
    throw std::domain_error(
        "transport_path: carried path breaks at transition " +
        std::to_string(*bad) +
        "; the destination chords collapse too far to keep the walk");
  }
  return carried;
}

ProgressionPath miniature() {
  ProgressionPath path;
  path.system = make_system(10, 6, 5);
  constexpr std::array<int, 17> roots{0, 0, 4, 9, 9, 5, 0, 6, 1,
                                      7, 2, 2, 6, 1, 5, 0, 0};
  for (std::size_t i = 0; i < roots.size(); ++i) {
    path.steps.push_back(PathStep{
        i % 2 == 0 ? Quality::Major : Quality::Minor, roots[i]});
  }
  return path;
}

ProgressionPath random_path(const HarmonicSystem& sys, std::size_t length,
                            std::uint32_t seed) {
  if (length == 0) {
    throw std::invalid_argument("random_path: length must be positive");
  }
  std::mt19937 rng(seed);
  ProgressionPath path;
  path.system = sys;
  const Quality first =
      rng() % 2 == 0 ? Quality::Major : Quality::Minor;
  const int root = static_cast<int>(rng() % static_cast<std::uint32_t>(sys.n));
  path.steps.push_back(PathStep{first, root});
  Chord current = chord(sys, first, root);
  while (path.steps.size() < length) {
    current = neighbors(sys, current)[rng() % 3];
    path.steps.push_back(PathStep{current.quality, current.root});
  }
  return path;
}

std::string path_to_json(const ProgressionPath& path) {
  nlohmann::ordered_json doc;
  doc["system"] = {{"n", path.system.n},
                   {"t", path.system.t},
                   {"s", path.system.s}};
  doc["steps"] = nlohmann::ordered_json::array();
  for (const PathStep& step : path.steps) {
    doc["steps"].push_back(
        {{"quality", std::string(1, quality_letter(step.quality))},
         {"root", step.root}});
  }
  return doc.dump(2);
}

ProgressionPath path_from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  if (!doc.is_object() || !doc.contains("system") || !doc.contains("steps")) {
    throw std::runtime_error(
        "path JSON: expected an object with system and steps");
  }
  const nlohmann::json& sys = doc["system"];
  for (const char* key : {"n", "t", "s"}) {
    if (!sys.is_object() || !sys.contains(key) ||
        !sys[key].is_number_integer()) {
      throw std::runtime_error("path JSON: system needs integer n, t, s");
    }
  }
  ProgressionPath path;
  path.system = make_system(sys["n"].get<int>(), sys["t"].get<int>(),
                            sys["s"].get<int>());
  if (!doc["steps"].is_array()) {
    throw std::runtime_error("path JSON: steps must be an array");
  }
  for (const nlohmann::json& entry : doc["steps"]) {
    if (!entry.is_object() || !entry.contains("quality") ||
        !entry.contains("root") || !entry["quality"].is_string() ||
        !entry["root"].is_number_integer()) {
      throw std::runtime_error(
          "path JSON: each step needs a quality letter and an integer root");
    }
    const std::string letter = entry["quality"].get<std::string>();
    Quality quality = Quality::Major;
    if (letter == "m") {
      quality = Quality::Minor;
    } else if (letter != "M") {
      throw std::runtime_error("path JSON: quality must be \"M\" or \"m\"");
    }
    path.steps.push_back(PathStep{quality, entry["root"].get<int>()});
  }
  return path;
}

}  // namespace tonnetz
