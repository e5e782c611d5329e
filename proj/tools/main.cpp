// Command-line front end: thin adapters over the library. Exit codes:
// 0 = holds/accepted, 1 = fails/refuted (witness on stdout), 2 = usage,
// parse or resource errors.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ilb/conditions.hpp"
#include "ilb/error.hpp"
#include "ilb/proof.hpp"
#include "ilb/schema.hpp"
#include "ilb/search.hpp"
#include "ilb/simulation.hpp"
#include "ilb/veltman.hpp"

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ilb::Error(ilb::Error::Kind::Io, "cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ilb::Error(ilb::Error::Kind::Io, "cannot write file: " + path);
  out << text;
}

int run(int argc, char** argv) {
  CLI::App app{"interpretability-logic toolkit: formulas, Veltman models, "
               "frame conditions, simulations, proofs and countermodel search"};
  app.require_subcommand(1);

  // parse
  std::string parse_text;
  auto* cmd_parse = app.add_subcommand("parse", "parse a formula and print it back");
  cmd_parse->add_option("formula", parse_text, "formula text")->required();

  // classify
  std::string classify_text;
  auto* cmd_classify = app.add_subcommand("classify", "syntactic class membership");
  cmd_classify->add_option("formula", classify_text, "formula text")->required();

  // check-model
  std::string cm_file, cm_formula;
  int cm_world = -1;
  auto* cmd_model = app.add_subcommand("check-model", "evaluate forcing on a model file");
  cmd_model->add_option("file", cm_file, "model file")->required();
  cmd_model->add_option("--formula", cm_formula, "formula text")->required();
  cmd_model->add_option("--world", cm_world, "world to check (default: all worlds)");

  // check-frame
  std::string cf_file, cf_cond;
  auto* cmd_frame = app.add_subcommand("check-frame", "decide a frame condition");
  cmd_frame->add_option("file", cf_file, "frame or model file")->required();
  cmd_frame->add_option("--condition", cf_cond, "M, M0, P, W, R, C:<i> or CB")->required();

  // bis
  std::string bis_file;
  int bis_level_opt = -1;
  bool bis_fix = false;
  auto* cmd_bis = app.add_subcommand("bis", "level relation bis_i or its fixpoint");
  cmd_bis->add_option("file", bis_file, "frame or model file")->required();
  cmd_bis->add_option("--level", bis_level_opt, "refinement level i");
  cmd_bis->add_flag("--fix", bis_fix, "stabilized greatest B-simulation");

  // charform
  std::string ch_file;
  int ch_node = 0, ch_level = 0;
  auto* cmd_char = app.add_subcommand("charform",
                                      "characteristic formula of a node (model file on stdout)");
  cmd_char->add_option("file", ch_file, "frame or model file")->required();
  cmd_char->add_option("--node", ch_node, "node b")->required();
  cmd_char->add_option("--level", ch_level, "level i")->required();

  // counterexample
  std::string ce_file;
  int ce_level = 0;
  auto* cmd_counter = app.add_subcommand(
      "counterexample", "check C_i; on failure emit the constructive refutation");
  cmd_counter->add_option("file", ce_file, "frame or model file")->required();
  cmd_counter->add_option("--level", ce_level, "level i")->required();

  // prove-z
  std::string pz_a, pz_b, pz_out;
  auto* cmd_prove = app.add_subcommand("prove-z", "derive (A == B) -> (A |> A & B) from B0");
  cmd_prove->add_option("--a", pz_a, "formula A (BS1)")->required();
  cmd_prove->add_option("--b", pz_b, "formula B (BS1)")->required();
  cmd_prove->add_option("-o,--out", pz_out, "write the proof script here");

  // verify
  std::string vf_file;
  auto* cmd_verify = app.add_subcommand("verify", "check a proof script");
  cmd_verify->add_option("file", vf_file, "proof script")->required();

  // search
  std::string se_schema, se_require;
  int se_worlds = 3;
  auto* cmd_search = app.add_subcommand("search", "look for a frame countermodel");
  cmd_search->add_option("--schema", se_schema, "pooled schema (B0, Z, W, R, Rstar, M, M0, P)")
      ->required();
  cmd_search->add_option("--max-worlds", se_worlds, "frame size bound (at most 5)");
  cmd_search->add_option("--require", se_require, "frame condition the countermodel must satisfy");

  // fixtures
  bool fx_verify = false, fx_list = false;
  std::string fx_emit, fx_outdir = ".";
  auto* cmd_fixtures = app.add_subcommand("fixtures", "bundled countermodels and the independence report");
  cmd_fixtures->add_flag("--verify", fx_verify, "run the independence report");
  cmd_fixtures->add_flag("--list", fx_list, "list fixture names");
  cmd_fixtures->add_option("--emit", fx_emit, "print one fixture file");
  cmd_fixtures->add_option("--outdir", fx_outdir, "where --verify writes witness files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  if (cmd_parse->parsed()) {
    std::cout << ilb::parse_formula(parse_text).str() << "\n";
    return kExitHolds;
  }

  if (cmd_classify->parsed()) {
    const ilb::ClassReport rep = ilb::classify(ilb::parse_formula(classify_text));
    std::cout << "BS1: " << (rep.in_bs1 ? "yes" : "no") << "\n";
    if (rep.es2_level)
      std::cout << "ES2 level " << *rep.es2_level << "\n";
    else
      std::cout << "ES2: no\n";
    std::cout << "ES3: " << (rep.in_es3 ? "yes" : "no") << "\n";
    std::cout << "ES4: " << (rep.in_es4 ? "yes" : "no") << "\n";
    std::cout << "EP2c: " << (rep.in_ep2c ? "yes" : "no") << "\n";
    return kExitHolds;
  }

  if (cmd_model->parsed()) {
    const ilb::VeltmanModel m = ilb::load_model(read_file(cm_file));
    const ilb::Formula f = ilb::parse_formula(cm_formula);
    const std::uint64_t set = ilb::forcing_set(m, f);
    if (cm_world >= 0) {
      if (cm_world >= m.frame.n)
        throw ilb::Error(ilb::Error::Kind::Usage, "world out of range");
      const bool ok = (set >> cm_world) & 1;
      std::cout << "world " << cm_world << (ok ? " forces " : " does not force ")
                << f.str() << "\n";
      return ok ? kExitHolds : kExitFails;
    }
    const std::uint64_t all = m.frame.all_mask();
    if (set == all) {
      std::cout << "valid in the model (all " << m.frame.n << " worlds)\n";
      return kExitHolds;
    }
    const int w = __builtin_ctzll(all & ~set);
    std::cout << "world " << w << " does not force " << f.str() << "\n";
    return kExitFails;
  }

  if (cmd_frame->parsed()) {
    const auto cond = ilb::parse_condition_id(cf_cond);
    if (!cond) throw ilb::Error(ilb::Error::Kind::Usage, "unknown condition: " + cf_cond);
    const ilb::VeltmanFrame f = ilb::load_frame(read_file(cf_file));
    const ilb::ConditionResult res = ilb::check_condition(f, *cond);
    if (res.holds) {
      std::cout << "condition " << ilb::to_string(*cond) << " holds\n";
      return kExitHolds;
    }
    std::cout << "condition " << ilb::to_string(*cond) << " fails: " << res.witness << "\n";
    return kExitFails;
  }

  if (cmd_bis->parsed()) {
    if (bis_fix == (bis_level_opt >= 0))
      throw ilb::Error(ilb::Error::Kind::Usage, "give exactly one of --level or --fix");
    const ilb::VeltmanFrame f = ilb::load_frame(read_file(bis_file));
    const ilb::SimRelation rel =
        bis_fix ? ilb::greatest_b_simulation(f) : ilb::bis_level(f, bis_level_opt);
    for (int b = 0; b < f.n; ++b)
      for (int u = 0; u < f.n; ++u)
        if (rel.at(b, u)) std::cout << b << " " << u << "\n";
    return kExitHolds;
  }

  if (cmd_char->parsed()) {
    const ilb::VeltmanFrame f = ilb::load_frame(read_file(ch_file));
    if (ch_node < 0 || ch_node >= f.n)
      throw ilb::Error(ilb::Error::Kind::Usage, "node out of range");
    const ilb::CharacteristicResult res = ilb::characteristic_formula(f, ch_node, ch_level);
    std::cout << "# charform node=" << ch_node << " level=" << ch_level << "\n";
    std::cout << "# formula: " << res.formula.str() << "\n";
    std::cout << ilb::write_model(ilb::VeltmanModel{f, res.valuation});
    return kExitHolds;
  }

  if (cmd_counter->parsed()) {
    const ilb::VeltmanFrame f = ilb::load_frame(read_file(ce_file));
    const ilb::CiResult ci = ilb::check_ci(f, ce_level);
    if (ci.holds) {
      std::cout << "condition C_" << ce_level << " holds\n";
      return kExitHolds;
    }
    const ilb::Lemma7Result lemma = ilb::lemma7_counterexample(f, ce_level, *ci.witness);
    std::cout << "# C_" << ce_level << " fails at (a,b)=(" << ci.witness->first << ","
              << ci.witness->second << ")\n";
    std::cout << "# antecedent: " << lemma.antecedent.str() << "\n";
    std::cout << "# consequent: " << lemma.consequent.str() << "\n";
    std::cout << "# refuted at world " << lemma.world << "\n";
    std::cout << ilb::write_model(lemma.model);
    return kExitFails;
  }

  if (cmd_prove->parsed()) {
    const ilb::Derivation d =
        ilb::derive_z(ilb::parse_formula(pz_a), ilb::parse_formula(pz_b));
    const std::string script = ilb::write_derivation(d);
    if (pz_out.empty())
      std::cout << script;
    else
      write_file(pz_out, script);
    std::cerr << d.steps.size() << " steps\n";
    return kExitHolds;
  }

  if (cmd_verify->parsed()) {
    const ilb::Derivation d = ilb::parse_derivation(read_file(vf_file));
    const ilb::VerifyResult res = ilb::verify_derivation(d);
    if (res.ok) {
      std::cout << "accepted: " << res.formulas.back().str() << "\n";
      return kExitHolds;
    }
    std::cout << "rejected at step " << res.step << ": " << res.reason << "\n";
    return kExitFails;
  }

  if (cmd_search->parsed()) {
    const ilb::InstancePool pool = ilb::pool_for_schema(se_schema);
    std::function<bool(const ilb::VeltmanFrame&)> side;
    if (!se_require.empty()) {
      const auto cond = ilb::parse_condition_id(se_require);
      if (!cond) throw ilb::Error(ilb::Error::Kind::Usage, "unknown condition: " + se_require);
      side = [cond](const ilb::VeltmanFrame& f) {
        return ilb::check_condition(f, *cond).holds;
      };
    }
    const auto report = ilb::find_frame_countermodel(pool.instances, se_worlds, side, pool.id);
    if (!report) {
      std::cout << "validated within bounds (pool " << pool.id << ", max worlds "
                << se_worlds << ")\n";
      return kExitHolds;
    }
    std::cout << "# countermodel for " << se_schema << " (pool " << pool.id << ")\n";
    std::cout << "# instance: " << report->instance.str() << "\n";
    std::cout << "# refuted at world " << report->world << "\n";
    std::cout << ilb::write_model(ilb::VeltmanModel{report->frame, report->valuation});
    return kExitFails;
  }

  if (cmd_fixtures->parsed()) {
    if (fx_list) {
      for (const auto id :
           {ilb::FixtureId::ZambellaIlp, ilb::FixtureId::BNotW, ilb::FixtureId::BWNotR})
        std::cout << ilb::fixture_name(id) << "\n";
      return kExitHolds;
    }
    if (!fx_emit.empty()) {
      const auto id = ilb::parse_fixture_id(fx_emit);
      if (!id) throw ilb::Error(ilb::Error::Kind::Usage, "unknown fixture: " + fx_emit);
      std::cout << ilb::fixture_text(*id);
      return kExitHolds;
    }
    if (fx_verify) {
      bool all_pass = true;
      for (const ilb::ClaimResult& c : ilb::independence_report()) {
        std::string file = "-";
        if (!c.witness_text.empty()) {
          file = (std::filesystem::path(fx_outdir) / c.witness_name).string();
          write_file(file, c.witness_text);
        }
        std::cout << c.claim << ": " << (c.pass ? "PASS" : "FAIL") << " " << file << "\n";
        std::cout << "  " << c.detail << "\n";
        all_pass = all_pass && c.pass;
      }
      return all_pass ? kExitHolds : kExitFails;
    }
    throw ilb::Error(ilb::Error::Kind::Usage, "fixtures needs --verify, --list or --emit");
  }

  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ilb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitError;
  }
}
