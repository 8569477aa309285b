#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kScratch = fs::temp_directory_path() / ("orbitkit_cli_test_" + std::to_string(::getpid()));

int run(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string(ORBITKIT_BIN) + " --out " + out.string() + " " + args + " > " +
                          (out.string() + ".stdout") + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path write_case(const std::string& name, const std::string& text) {
  fs::create_directories(kScratch);
  const fs::path p = kScratch / name;
  std::ofstream(p) << text;
  return p;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("classify") {
  fs::remove_all(kScratch);
  fs::create_directories(kScratch);
  const fs::path out = kScratch / "u22";
  CHECK(run("classify 'u(2,2)'", out) == 0);
  const std::string tsv = slurp(out / "orbits.tsv");
  CHECK(count_lines(tsv) == 11);
  int noticed = 0;
  std::istringstream in(tsv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) noticed += line.find("\ttrue\t") != std::string::npos;
  CHECK(noticed == 6);
  CHECK(fs::exists(out / "closure.dot"));
  const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
  CHECK(manifest["command"] == "classify");
  CHECK(manifest["seedless"] == true);
  for (const auto& a : manifest["artifacts"]) CHECK(fs::exists(out / a["path"].get<std::string>()));

  CHECK(run("classify 'sp(4,C)'", kScratch / "sp4c") == 3);
  CHECK(slurp(kScratch / "sp4c.stdout").find("discrepancy {2,2}") != std::string::npos);
  CHECK(count_lines(slurp(kScratch / "sp4c" / "orbits.tsv")) == 5);
  CHECK(run("classify 'su(2)'", kScratch / "su2") == 0);
  CHECK(run("classify 'xx(2)'", kScratch / "bad") == 2);
  CHECK(run("classify", kScratch / "bad2") == 2);
}

TEST_CASE("wavefront") {
  const auto su2 = write_case("su2.case", "algebra = su(2)\nnu = 2.5, 0, 0  # k = 4\n");
  CHECK(run("wavefront --case " + su2.string(), kScratch / "wf_su2") == 0);
  CHECK(slurp(kScratch / "wf_su2" / "wavefront.tsv") == "label\tdimension\tcoefficient\tcriterion\n+ +\t0\t5\tpass\n");

  const auto ell = write_case("ell.case", "algebra = sl(2,R)\nnu = 1, 0, -1\nnu_tag = elliptic+\n");
  CHECK(run("wavefront --case " + ell.string(), kScratch / "wf_ell") == 0);
  CHECK(slurp(kScratch / "wf_ell" / "wavefront.tsv") == "label\tdimension\tcoefficient\tcriterion\n+-\t2\t1\tpass\n");

  const auto bad = write_case("bad.case", "algebra = sl(2,R)\nnu = 0, 0, 0\n");
  CHECK(run("wavefront --case " + bad.string(), kScratch / "wf_bad") == 2);
  const auto garbled = write_case("garbled.case", "algebra = sl(2,R)\nnu = 1, zero, 0\n");
  CHECK(run("wavefront --case " + garbled.string(), kScratch / "wf_garbled") == 2);
  const auto short_nu = write_case("short.case", "algebra = sl(2,R)\nnu = 1, 0\n");
  CHECK(run("wavefront --case " + short_nu.string(), kScratch / "wf_short") == 2);
  CHECK(run("wavefront --case " + (kScratch / "missing.case").string(), kScratch / "wf_missing") == 2);
}

TEST_CASE("determinism and cache") {
  const auto hyp = write_case("hyp.case", "algebra = sl(2,R)\nnu = 0, 1, 0\n");
  CHECK(run("wavefront --case " + hyp.string(), kScratch / "d1") == 0);
  CHECK(run("wavefront --case " + hyp.string(), kScratch / "d2") == 0);
  for (const char* f : {"wavefront.tsv", "evidence.tsv"}) CHECK(slurp(kScratch / "d1" / f) == slurp(kScratch / "d2" / f));

  const std::string cache = "--cache " + (kScratch / "cache").string() + " ";
  CHECK(run(cache + "wavefront --case " + hyp.string(), kScratch / "c1") == 0);
  CHECK(run(cache + "wavefront --case " + hyp.string(), kScratch / "c2") == 0);
  const auto m1 = nlohmann::json::parse(slurp(kScratch / "c1" / "manifest.json"));
  const auto m2 = nlohmann::json::parse(slurp(kScratch / "c2" / "manifest.json"));
  CHECK(m1["cache"] == "miss");
  CHECK(m2["cache"] == "hit");
  CHECK(m1["config_digest"] == m2["config_digest"]);
  CHECK(m1["artifacts"] == m2["artifacts"]);
  CHECK(slurp(kScratch / "c1.stdout") == slurp(kScratch / "c2.stdout"));
  // Tolerances are part of the digest.
  CHECK(run(cache + "--tol 1e-7 wavefront --case " + hyp.string(), kScratch / "c3") == 0);
  const auto m3 = nlohmann::json::parse(slurp(kScratch / "c3" / "manifest.json"));
  CHECK(m3["cache"] == "miss");
  CHECK(m3["config_digest"] != m1["config_digest"]);
}

TEST_CASE("verify and fourier") {
  CHECK(run("verify kirillov", kScratch / "vk") == 0);
  CHECK(count_lines(slurp(kScratch / "vk" / "verify.tsv")) == 7);
  CHECK(run("verify lemma41", kScratch / "vl") == 0);
  CHECK(run("verify nonsense", kScratch / "vn") == 2);

  const auto f = write_case("f.case", "algebra = su(2)\nnu = 1, 0, 0\nx = 0, 0, 0\n");
  CHECK(run("fourier --case " + f.string(), kScratch / "fo") == 0);
  CHECK(slurp(kScratch / "fo" / "fourier.tsv") == "x\tre\tim\n0,0,0\t2\t0\n");
  const auto nc = write_case("nc.case", "algebra = sl(2,R)\nnu = 0, 1, 0\n");
  CHECK(run("fourier --case " + nc.string(), kScratch / "fo_nc") == 2);
  fs::remove_all(kScratch);
}
