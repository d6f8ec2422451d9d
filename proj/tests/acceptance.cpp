// One PASS/FAIL line per acceptance criterion, computed from the pilot
// configuration. Usage: normlab_acceptance [pilot.cfg] [--out DIR]
// [--known-unattainable K,...] [--only K,...]

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "normlab/config.hpp"
#include "normlab/experiments.hpp"
#include "normlab/records.hpp"

using namespace normlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string describe(const Check& c) {
  std::string s = c.name + " = " + format_number(c.value) + " " + c.relation + " " + format_number(c.bound);
  if (c.relation == "in") s += ".." + format_number(c.upper);
  return s;
}

/// Passes when every selected check passes; the detail lists the failures
/// (or all selected checks when everything passes).
Outcome judge(const Report& r, const std::function<bool(const Check&)>& select) {
  Outcome o{true, ""};
  std::vector<std::string> failing, all;
  for (const Check& c : r.checks) {
    if (!select(c)) continue;
    all.push_back(describe(c));
    if (!c.pass) {
      o.pass = false;
      failing.push_back(describe(c));
    }
  }
  if (all.empty()) return {false, "no checks recorded"};
  for (const auto& s : o.pass ? all : failing) o.detail += (o.detail.empty() ? "" : "; ") + s;
  return o;
}

auto every = [](const Check&) { return true; };

auto named = [](std::vector<std::string> parts) {
  return [parts = std::move(parts)](const Check& c) {
    for (const auto& p : parts) {
      if (c.name.find(p) != std::string::npos) return true;
    }
    return false;
  };
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const Config& config, const std::filesystem::path& out) {
  Outcome o{true, ""};
  for (const char* name : {"hilbert-toy", "linear-inflation"}) {
    const auto& entry = experiments::find(name);
    const Report a = entry.run(config);
    const Report b = entry.run(config);
    const auto fa = write_report(a, out / "determinism_a");
    const auto fb = write_report(b, out / "determinism_b");
    std::size_t compared = 0;
    bool same = a.config_hash == b.config_hash && fa.size() == fb.size();
    for (std::size_t i = 0; same && i < fa.size(); ++i) {
      if (fa[i].extension() != ".csv") continue;
      same = slurp(fa[i]) == slurp(fb[i]);
      ++compared;
    }
    o.pass = o.pass && same;
    o.detail += std::string(o.detail.empty() ? "" : "; ") + name + " hash " + a.config_hash + ": " +
                std::to_string(compared) + " CSVs " + (same ? "identical" : "DIFFER");
  }
  return o;
}

std::set<int> parse_list(const std::string& text) {
  std::set<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(std::stoi(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string config_path = NORMLAB_PILOT_CONFIG;
  std::string out_dir = "acceptance_out";
  std::string unattainable, only;
  app.add_option("config", config_path, "Pilot configuration");
  app.add_option("--out", out_dir, "Directory for the emitted reports");
  app.add_option("--known-unattainable", unattainable,
                 "Criteria whose FAIL is documented as unattainable; they do not affect the exit code");
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const Config config = Config::load(config_path);
  const std::filesystem::path out(out_dir);
  const std::set<int> expected_fail = parse_list(unattainable);
  const std::set<int> selected = parse_list(only);

  auto run = [&](const std::string& name) {
    const Report r = experiments::find(name).run(config);
    write_report(r, out);
    return r;
  };

  struct Criterion {
    int id;
    std::string title;
    std::function<Outcome()> evaluate;
  };
  const std::vector<Criterion> criteria{
      {1, "Hilbert toy model, 1D n=4096", [&] { return judge(run("hilbert-toy"), every); }},
      {2, "Littlewood-Paley at 512^2", [&] { return judge(run("lp-suite"), every); }},
      {3, "Assumption-1 scan N=2..8 at 2048^2", [&] { return judge(run("assumption1-scan"), every); }},
      {4, "Gronwall bound on flow maps", [&] { return judge(run("flow-map-suite"), named({"Gronwall", "t L e^{tL}"})); }},
      {5, "Commutator scan at 512^2", [&] { return judge(run("commutator-scan"), every); }},
      {6, "Duhamel identity, cellular flow", [&] { return judge(run("duhamel"), every); }},
      {7, "2D Euler conservation at 256^2", [&] { return judge(run("euler-conservation"), every); }},
      {8, "Perturbed-Euler pilot at 1024^2", [&] { return judge(run("euler-inflation"), every); }},
      {9, "2.5D cellular exponential growth", [&] { return judge(run("exp-growth"), every); }},
      {10, "C^1 mechanism",
       [&] {
         return judge(run("c1-inflation"), named({"Delta Q", "FD slope", "|D^2 p0|"}));
       }},
      {11, "Determinism by config hash", [&] { return determinism(config, out); }},
  };

  int unexpected = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome o;
    try {
      o = c.evaluate();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << " | " << o.detail;
    if (!o.pass && expected_fail.count(c.id)) std::cout << " | documented as unattainable";
    std::cout << std::endl;
    if (!o.pass && !expected_fail.count(c.id)) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
