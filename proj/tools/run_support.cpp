#include "run_support.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <unistd.h>

#include "orbitkit/error.hpp"

namespace orbitkit::cli {

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> numbers(const std::string& text, int lineno) {
  std::string spaced = text;
  for (char& c : spaced)
    if (c == ',') c = ' ';
  std::istringstream in(spaced);
  std::vector<double> out;
  for (std::string tok; in >> tok;) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size())
      throw Error(ErrorCode::InvalidSpec, "line " + std::to_string(lineno) + ": bad number '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidSpec, "line " + std::to_string(lineno) + ": no coordinates");
  return out;
}

}  // namespace

CaseConfig CaseConfig::parse(std::string_view text) {
  CaseConfig c;
  std::istringstream in{std::string(text)};
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::InvalidSpec, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "algebra") {
      if (!c.algebra.empty()) throw Error(ErrorCode::InvalidSpec, "algebra given twice");
      c.algebra = value;
    } else if (key == "nu") {
      c.nus.push_back(numbers(value, lineno));
    } else if (key == "nu_tag") {
      c.nu_tags.push_back(value);
    } else if (key == "nilpotent") {
      const auto colon = value.find(':');
      if (colon == std::string::npos)
        throw Error(ErrorCode::InvalidSpec, "line " + std::to_string(lineno) + ": expected name : coordinates");
      c.nilpotents.emplace_back(trim(value.substr(0, colon)), numbers(value.substr(colon + 1), lineno));
    } else if (key == "x") {
      c.xs.push_back(numbers(value, lineno));
    } else {
      throw Error(ErrorCode::InvalidSpec, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (c.algebra.empty()) throw Error(ErrorCode::InvalidSpec, "case file has no algebra");
  if (!c.nu_tags.empty() && c.nu_tags.size() != c.nus.size())
    throw Error(ErrorCode::InvalidSpec, "nu_tag count does not match nu count");
  return c;
}

CaseConfig CaseConfig::load(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw Error(ErrorCode::InvalidSpec, "cannot read case file " + path.string());
  return parse(read_file(path));
}

json CaseConfig::to_json() const {
  json j;
  j["algebra"] = algebra;
  j["nu"] = nus;
  j["nu_tag"] = nu_tags;
  json nil = json::array();
  for (const auto& [name, coords] : nilpotents) nil.push_back({{"name", name}, {"coords", coords}});
  j["nilpotent"] = nil;
  j["x"] = xs;
  return j;
}

// ------------------------------------------------------------------- files

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("short write to " + path.string());
}

// ------------------------------------------------------------------- cache

ResultCache ResultCache::from(const std::string& flag) {
  ResultCache c;
  if (!flag.empty()) {
    c.dir_ = flag;
  } else if (const char* env = std::getenv("ORBITKIT_CACHE"); env && *env) {
    c.dir_ = env;
  }
  return c;
}

std::optional<RunResult> ResultCache::load(const std::string& digest) const {
  if (!dir_) return std::nullopt;
  const fs::path entry = *dir_ / digest;
  if (!fs::is_regular_file(entry / "result.json")) return std::nullopt;
  const json j = json::parse(read_file(entry / "result.json"), nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  RunResult r;
  r.exit_code = j.at("exit_code").get<int>();
  r.stdout_text = j.at("stdout").get<std::string>();
  for (const auto& name : j.at("artifacts")) {
    const fs::path file = entry / name.get<std::string>();
    if (!fs::is_regular_file(file)) return std::nullopt;
    r.artifacts.push_back({name.get<std::string>(), read_file(file)});
  }
  return r;
}

void ResultCache::store(const std::string& digest, const RunResult& result) const {
  if (!dir_) return;
  fs::create_directories(*dir_);
  const fs::path final_dir = *dir_ / digest;
  if (fs::exists(final_dir)) return;
  const fs::path scratch = *dir_ / (digest + ".tmp-" + std::to_string(::getpid()));
  fs::remove_all(scratch);
  fs::create_directories(scratch);
  json names = json::array();
  for (const auto& a : result.artifacts) {
    write_file(scratch / a.name, a.content);
    names.push_back(a.name);
  }
  const json j = {{"exit_code", result.exit_code}, {"stdout", result.stdout_text}, {"artifacts", names}};
  write_file(scratch / "result.json", j.dump(2) + "\n");
  std::error_code ec;
  fs::rename(scratch, final_dir, ec);
  if (ec) fs::remove_all(scratch);  // another writer won
}

// ---------------------------------------------------------------- manifest

json write_run(const fs::path& out, const std::string& command, const json& config, const std::string& digest,
               const RunResult& result, double wall_seconds, const std::string& cache_state) {
  fs::create_directories(out);
  json artifacts = json::array();
  for (const auto& a : result.artifacts) {
    write_file(out / a.name, a.content);
    artifacts.push_back({{"path", a.name}, {"fnv1a64", fnv1a64(a.content)}, {"bytes", a.content.size()}});
  }
  json m;
  m["format"] = kManifestFormat;
  m["version"] = kVersion;
  m["command"] = command;
  m["config"] = config;
  m["config_digest"] = digest;
  for (const char* key : {"tolerances", "box_radius", "grid"})
    if (config.contains(key)) m[key] = config[key];
  m["seedless"] = true;
  m["wall_time_s"] = wall_seconds;
  m["cache"] = cache_state;
  m["exit_code"] = result.exit_code;
  m["artifacts"] = artifacts;
  write_file(out / "manifest.json", m.dump(2) + "\n");
  return m;
}

}  // namespace orbitkit::cli
