#include <sstream>

#include "ilb/conditions.hpp"
#include "ilb/error.hpp"
#include "ilb/search.hpp"
#include "ilb/simulation.hpp"

namespace ilb {

namespace {

std::string describe_valuation(const Valuation& val, int n) {
  std::string out;
  for (const auto& [name, mask] : val) {
    out += " " + name + "@{";
    bool first = true;
    for (int w = 0; w < n; ++w)
      if ((mask >> w) & 1) {
        if (!first) out += ",";
        out += std::to_string(w);
        first = false;
      }
    out += "}";
  }
  return out;
}

std::string witness_model_text(const VeltmanModel& m, const Formula& instance, int world,
                               const std::string& note) {
  std::string out = "# " + note + "\n";
  out += "# instance: " + instance.str() + "\n";
  out += "# refuted at world " + std::to_string(world) + "\n";
  out += write_model(m);
  return out;
}

// A refuted instance of some pool entry on the given frame, if any.
std::optional<SearchReport> refute_pool_on(const VeltmanFrame& f,
                                           const InstancePool& pool) {
  for (const Formula& inst : pool.instances) {
    const InstanceCheck chk = instance_valid_on_frame(f, inst);
    if (!chk.valid) {
      SearchReport r;
      r.schema = pool.id;
      r.found = true;
      r.frame = f;
      r.valuation = chk.witness->valuation;
      r.world = chk.witness->world;
      r.instance = inst;
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<ClaimResult> independence_report(int search_bound) {
  std::vector<ClaimResult> out;

  // Z fails on a frame satisfying the P condition, so Z (hence B) is not
  // derivable in ILP.
  {
    ClaimResult c;
    c.claim = "Z fails on a P-frame";
    c.witness_name = "witness_z_on_p_frame.vm";
    const VeltmanModel m = fixture(FixtureId::ZambellaIlp);
    const Formula z = parse_formula("(<>p == <>q) -> (<>p |> <>p & <>q)");
    const bool p_holds = check_p(m.frame).holds;
    const bool refuted = !forces(m, 0, z);
    c.pass = p_holds && refuted;
    c.detail = "fixture zambella_ilp: P condition holds, Z instance refuted at world 0";
    c.witness_text = witness_model_text(m, z, 0, "Z instance refuted on a P-frame");
    out.push_back(std::move(c));
  }

  // W,R do not give B: a frame satisfying both the W and R conditions but
  // failing C_0, with the constructive B_0 refutation attached.
  {
    ClaimResult c;
    c.claim = "W,R do not derive B";
    c.witness_name = "witness_w_r_not_b.vm";
    std::optional<VeltmanFrame> found;
    enumerate_frames(search_bound, [&](const VeltmanFrame& f) {
      if (!check_w(f).holds || !check_r(f).holds) return true;
      if (check_ci(f, 0).holds) return true;
      found = f;
      return false;
    });
    if (found) {
      const CiResult ci = check_ci(*found, 0);
      const Lemma7Result lemma = lemma7_counterexample(*found, 0, *ci.witness);
      const bool ok = forces(lemma.model, lemma.world, lemma.antecedent) &&
                      !forces(lemma.model, lemma.world, lemma.consequent);
      c.pass = ok;
      c.detail = "searched frame (" + std::to_string(found->n) +
                 " worlds): W and R conditions hold, C_0 fails at (a,b)=(" +
                 std::to_string(ci.witness->first) + "," + std::to_string(ci.witness->second) +
                 ")";
      c.witness_text = witness_model_text(
          lemma.model,
          Formula::imp(lemma.antecedent, lemma.consequent), lemma.world,
          "B_0 instance refuted on a frame satisfying the W and R conditions");
    } else {
      c.pass = false;
      c.detail = "no frame found within " + std::to_string(search_bound) + " worlds";
    }
    out.push_back(std::move(c));
  }

  // B,R do not give W: the b_not_w fixture.
  {
    ClaimResult c;
    c.claim = "B,R do not derive W";
    c.witness_name = "witness_b_r_not_w.vm";
    const VeltmanModel m = fixture(FixtureId::BNotW);
    const bool conditions = !check_w(m.frame).holds && check_r(m.frame).holds &&
                            check_cb(m.frame).holds;
    const auto refutation = refute_pool_on(m.frame, pool_for_schema("W"));
    c.pass = conditions && refutation.has_value();
    if (refutation) {
      c.detail = "fixture b_not_w: C_B and R hold, W instance " +
                 refutation->instance.str() + " refuted at world " +
                 std::to_string(refutation->world) + " with" +
                 describe_valuation(refutation->valuation, m.frame.n);
      c.witness_text = witness_model_text(VeltmanModel{m.frame, refutation->valuation},
                                          refutation->instance, refutation->world,
                                          "W instance refuted on a C_B and R frame");
    } else {
      c.detail = "fixture b_not_w: no W pool instance refuted";
    }
    out.push_back(std::move(c));
  }

  // B,W do not give R: the b_w_not_r fixture.
  {
    ClaimResult c;
    c.claim = "B,W do not derive R";
    c.witness_name = "witness_b_w_not_r.vm";
    const VeltmanModel m = fixture(FixtureId::BWNotR);
    const bool conditions = check_w(m.frame).holds && !check_r(m.frame).holds &&
                            check_cb(m.frame).holds;
    const auto refutation = refute_pool_on(m.frame, pool_for_schema("R"));
    c.pass = conditions && refutation.has_value();
    if (refutation) {
      c.detail = "fixture b_w_not_r: C_B and W hold, R instance " +
                 refutation->instance.str() + " refuted at world " +
                 std::to_string(refutation->world) + " with" +
                 describe_valuation(refutation->valuation, m.frame.n);
      c.witness_text = witness_model_text(VeltmanModel{m.frame, refutation->valuation},
                                          refutation->instance, refutation->world,
                                          "R instance refuted on a C_B and W frame");
    } else {
      c.detail = "fixture b_w_not_r: no R pool instance refuted";
    }
    out.push_back(std::move(c));
  }

  return out;
}

}  // namespace ilb
