// relmon command line: sieve, certify, lattice-check, localize.
//
// Exit codes: 0 success (for certify/localize: the verdict holds), 1 the
// verdict does not hold, 2 invalid input or configuration.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "relmon/boolrel.hpp"
#include "relmon/cert.hpp"
#include "relmon/lattice.hpp"
#include "relmon/sieve.hpp"

namespace fs = std::filesystem;
using namespace relmon;

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

fs::path output_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("RELMON_OUT")) return env;
  return ".";
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::array<int, 4> parse_window(const std::string& text) {
  std::array<int, 4> window{};
  std::stringstream ss(text);
  std::string item;
  int count = 0;
  while (std::getline(ss, item, ',')) {
    if (count >= 4) throw std::invalid_argument("--Y wants exactly four points");
    window[count++] = std::stoi(item) - 1;  // 1-based on the command line
  }
  if (count != 4) throw std::invalid_argument("--Y wants exactly four points");
  return window;
}

// builtin lattice names: chain1..chain8, boolean1..boolean4
std::shared_ptr<const Lattice> load_builtin(const std::string& name) {
  if (name.rfind("chain", 0) == 0) {
    const int k = std::stoi(name.substr(5));
    if (k < 1 || k > 8) throw std::invalid_argument("builtin chains are chain1..chain8");
    return std::make_shared<Lattice>(build_chain(k));
  }
  if (name.rfind("boolean", 0) == 0) {
    const int k = std::stoi(name.substr(7));
    if (k < 1 || k > 4) {
      throw std::invalid_argument("builtin boolean lattices are boolean1..boolean4");
    }
    return std::make_shared<Lattice>(build_boolean(k));
  }
  throw std::invalid_argument("unknown builtin lattice \"" + name + "\"");
}

std::shared_ptr<const Lattice> load_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read lattice file " + path);
  auto result = read_lattice(in, fs::path(path).stem().string());
  if (auto* err = std::get_if<LatticeCheckError>(&result)) {
    throw std::invalid_argument("lattice file " + path + ": " + err->message());
  }
  return std::make_shared<Lattice>(std::get<Lattice>(std::move(result)));
}

std::string sieve_summary(const Classification& c, const char* mode_name,
                          bool ran_both, bool agree, const fs::path& csv) {
  std::string out;
  out += "n=" + std::to_string(c.n.value()) + " mode=" + mode_name + "\n";
  out += "units=" + std::to_string(c.count(Status::unit)) +
         " reducible=" + std::to_string(c.count(Status::reducible)) +
         " irreducible=" + std::to_string(c.count(Status::irreducible)) +
         " total=" + std::to_string(c.status.size()) + "\n";
  out += "irreducible-classes=" + std::to_string(c.class_reps.size()) + "\n";
  out += "class-reps=";
  for (std::size_t i = 0; i < c.class_reps.size(); ++i) {
    if (i) out += ',';
    out += Relation(c.n, c.class_reps[i]).to_hex();
  }
  out += "\n";
  const auto wp = witness_pair(c);
  out += "witness-pair=";
  out += wp ? wp->first.to_hex() + "," + wp->second.to_hex() : std::string("none");
  out += "\n";
  if (ran_both) out += std::string("modes-agree=") + (agree ? "yes" : "no") + "\n";
  out += "csv=" + csv.string() + "\n";
  return out;
}

int run_sieve(int n, const std::string& mode, int workers,
              const std::string& out_flag, std::string csv_flag) {
  Classification c = [&] {
    if (mode == "full") return classify_all(SetSize(n), SieveMode::full_pairs, workers);
    if (mode == "reduced") {
      return classify_all(SetSize(n), SieveMode::symmetry_reduced, workers);
    }
    if (mode != "both") throw std::invalid_argument("--mode must be full, reduced or both");
    auto full = classify_all(SetSize(n), SieveMode::full_pairs, workers);
    auto reduced = classify_all(SetSize(n), SieveMode::symmetry_reduced, workers);
    if (!(full == reduced)) {
      throw std::logic_error("sieve modes disagree");  // would be an implementation bug
    }
    return full;
  }();

  fs::path csv = csv_flag.empty()
                     ? output_dir(out_flag) / ("classification-n" + std::to_string(n) + ".csv")
                     : fs::path(csv_flag);
  write_file(csv, to_csv(c));
  std::cout << sieve_summary(c, mode.c_str(), mode == "both", true, csv);
  return 0;
}

int run_certify(bool relations, const std::string& lattice_name,
                const std::string& lattice_file, int n, const std::string& y_text,
                int atom, const std::string& mode, int workers, std::uint64_t seed,
                std::uint64_t pairs, bool timings, const std::string& out_flag,
                std::string cert_flag) {
  CertifyOptions opt;
  opt.workers = workers;
  opt.seed = seed;
  opt.iso_pairs = pairs;
  opt.measure_timings = timings;
  if (mode == "structured") opt.mode = HomVerifyMode::structured;
  else if (mode == "exhaustive") opt.mode = HomVerifyMode::exhaustive;
  else if (mode == "both") opt.mode = HomVerifyMode::both;
  else throw std::invalid_argument("--mode must be structured, exhaustive or both");

  Certificate cert;
  std::string stem;
  if (relations) {
    cert = certify_relations(SetSize(n), opt);
    stem = "certificate-b" + std::to_string(n);
  } else {
    auto lattice = lattice_file.empty() ? load_builtin(lattice_name)
                                        : load_lattice_file(lattice_file);
    const std::string label =
        lattice_file.empty() ? lattice_name : fs::path(lattice_file).stem().string();
    cert = certify_correspondences(lattice, SetSize(n), parse_window(y_text), atom, opt);
    stem = "certificate-" + label + "-n" + std::to_string(n);
  }

  const fs::path path = cert_flag.empty() ? output_dir(out_flag) / (stem + ".txt")
                                          : fs::path(cert_flag);
  const std::string text = cert.serialize();
  write_file(path, text);
  std::cout << text;
  return cert.established() ? 0 : 1;
}

int run_lattice_check(const std::string& name, const std::string& file) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot read lattice file " + file);
    auto result = read_lattice(in, fs::path(file).stem().string());
    if (auto* err = std::get_if<LatticeCheckError>(&result)) {
      std::cout << "rejected: " << err->message() << "\n";
      return 1;
    }
    const Lattice& l = std::get<Lattice>(result);
    std::cout << "ok: size=" << l.size() << " bottom=" << l.bottom()
              << " top=" << l.top() << " atoms=" << l.atoms().size() << "\n";
    return 0;
  }
  auto lattice = load_builtin(name);
  std::cout << "ok: " << lattice->description() << " size=" << lattice->size()
            << " bottom=" << lattice->bottom() << " top=" << lattice->top()
            << " atoms=" << lattice->atoms().size() << "\n";
  return 0;
}

int run_localize(const std::string& lattice_name, const std::string& lattice_file,
                 int n, const std::string& y_text, int atom, std::uint64_t seed,
                 std::uint64_t pairs, const std::string& out_flag,
                 std::string summary_flag) {
  auto lattice = lattice_file.empty() ? load_builtin(lattice_name)
                                      : load_lattice_file(lattice_file);
  const std::string label =
      lattice_file.empty() ? lattice_name : fs::path(lattice_file).stem().string();
  if (atom < 0) {
    if (lattice->atoms().empty()) throw std::invalid_argument("nontrivial lattice required");
    atom = lattice->atoms().front();
  }
  const Localizer loc = make_localizer(lattice, SetSize(n), parse_window(y_text), atom);
  const IsoSuiteResult iso = run_iso_suite(loc, seed, pairs);

  std::string text;
  text += "lattice=" + lattice->description() + "\n";
  text += "lattice-size=" + std::to_string(lattice->size()) + "\n";
  text += "n=" + std::to_string(n) + "\n";
  std::string window_text;
  for (int i = 0; i < 4; ++i) {
    if (i) window_text += ',';
    window_text += std::to_string(loc.window[i] + 1);
  }
  text += "window=" + window_text + "\n";
  text += "atom=" + std::to_string(loc.atom) + "\n";
  text += "bottom=" + std::to_string(lattice->bottom()) + "\n";
  text += "e=" + loc.e.serialize() + "\n";
  const std::string rnd =
      "random(" + std::to_string(seed) + "," + std::to_string(pairs) + ")";
  text += std::string("localizer-idempotent mode=exhaustive result=") +
          (iso.idempotent ? "pass" : "fail") + "\n";
  text += std::string("iso-project-lift mode=exhaustive result=") +
          (iso.round_trip_failures == 0 && iso.lift_fixed_failures == 0 ? "pass" : "fail") +
          "\n";
  text += "iso-lift-project mode=" + rnd + " result=" +
          (iso.lift_project_failures == 0 ? "pass" : "fail") + "\n";
  text += "iso-homomorphism mode=" + rnd + " result=" +
          (iso.hom_failures == 0 ? "pass" : "fail") + "\n";

  const fs::path path = summary_flag.empty()
                            ? output_dir(out_flag) /
                                  ("localizer-" + label + "-n" + std::to_string(n) + ".txt")
                            : fs::path(summary_flag);
  write_file(path, text);
  std::cout << text;
  return iso.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classification, localization and certificates for monoids of "
               "binary relations and lattice-valued correspondences"};
  app.require_subcommand(1);

  // sieve
  auto* sieve = app.add_subcommand("sieve", "classify every element of B_n");
  int sieve_n = 4;
  std::string sieve_mode = "both";
  int sieve_workers = 0;
  std::string sieve_out, sieve_csv;
  sieve->add_option("--n", sieve_n, "set size (1..4)")->required();
  sieve->add_option("--mode", sieve_mode, "full, reduced or both (default both)");
  sieve->add_option("--workers", sieve_workers, "worker threads (default: all cores)");
  sieve->add_option("--out", sieve_out, "output directory (default: $RELMON_OUT or .)");
  sieve->add_option("--csv", sieve_csv, "classification CSV path");

  // certify
  auto* certify = app.add_subcommand("certify", "emit a representation-type certificate");
  bool cert_relations = false;
  std::string cert_lattice, cert_lattice_file;
  int cert_n = 4;
  std::string cert_y = "1,2,3,4";
  int cert_atom = -1;
  std::string cert_mode = "both";
  int cert_workers = 0;
  std::uint64_t cert_seed = kDefaultSeed;
  std::uint64_t cert_pairs = 100000;
  bool cert_timings = false;
  std::string cert_out, cert_path;
  certify->add_flag("--relations", cert_relations, "subject is the relation monoid B_n");
  certify->add_option("--lattice", cert_lattice, "builtin lattice name (chain2..chain8, boolean1..boolean4)");
  certify->add_option("--lattice-file", cert_lattice_file, "lattice file path");
  certify->add_option("--n", cert_n, "set size")->required();
  certify->add_option("--Y", cert_y, "four window points, 1-based (default 1,2,3,4)");
  certify->add_option("--atom", cert_atom, "atom id (default: smallest)");
  certify->add_option("--mode", cert_mode, "structured, exhaustive or both (default both)");
  certify->add_option("--workers", cert_workers, "worker threads");
  certify->add_option("--seed", cert_seed, "random suite seed (default 42)");
  certify->add_option("--pairs", cert_pairs, "random pairs per suite (default 100000)");
  certify->add_flag("--timings", cert_timings, "record measured elapsed_ms in check lines");
  certify->add_option("--out", cert_out, "output directory");
  certify->add_option("--cert", cert_path, "certificate path");

  // lattice-check
  auto* lcheck = app.add_subcommand("lattice-check", "verify the lattice axioms");
  std::string lc_name, lc_file;
  lcheck->add_option("--name", lc_name, "builtin lattice name");
  lcheck->add_option("--file", lc_file, "lattice file path");

  // localize
  auto* localize = app.add_subcommand("localize", "build and verify an idempotent localization");
  std::string loc_lattice, loc_lattice_file;
  int loc_n = 4;
  std::string loc_y = "1,2,3,4";
  int loc_atom = -1;
  std::uint64_t loc_seed = kDefaultSeed;
  std::uint64_t loc_pairs = 100000;
  std::string loc_out, loc_summary;
  localize->add_option("--lattice", loc_lattice, "builtin lattice name");
  localize->add_option("--lattice-file", loc_lattice_file, "lattice file path");
  localize->add_option("--n", loc_n, "set size (4..6)")->required();
  localize->add_option("--Y", loc_y, "four window points, 1-based");
  localize->add_option("--atom", loc_atom, "atom id (default: smallest)");
  localize->add_option("--seed", loc_seed, "random suite seed (default 42)");
  localize->add_option("--pairs", loc_pairs, "random pairs per suite (default 100000)");
  localize->add_option("--out", loc_out, "output directory");
  localize->add_option("--summary", loc_summary, "summary file path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sieve->parsed()) {
      return run_sieve(sieve_n, sieve_mode, sieve_workers, sieve_out, sieve_csv);
    }
    if (certify->parsed()) {
      if (cert_relations == (!cert_lattice.empty() || !cert_lattice_file.empty())) {
        throw std::invalid_argument(
            "certify wants exactly one of --relations, --lattice, --lattice-file");
      }
      return run_certify(cert_relations, cert_lattice, cert_lattice_file, cert_n,
                         cert_y, cert_atom, cert_mode, cert_workers, cert_seed,
                         cert_pairs, cert_timings, cert_out, cert_path);
    }
    if (lcheck->parsed()) {
      if (lc_name.empty() == lc_file.empty()) {
        throw std::invalid_argument("lattice-check wants exactly one of --name, --file");
      }
      return run_lattice_check(lc_name, lc_file);
    }
    if (localize->parsed()) {
      if (loc_lattice.empty() == loc_lattice_file.empty()) {
        throw std::invalid_argument("localize wants exactly one of --lattice, --lattice-file");
      }
      return run_localize(loc_lattice, loc_lattice_file, loc_n, loc_y, loc_atom,
                          loc_seed, loc_pairs, loc_out, loc_summary);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
