#include "fcg/cli.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <ostream>

#include "CLI11.hpp"

#include "fcg/analysis.hpp"
#include "fcg/automata.hpp"
#include "fcg/errors.hpp"
#include "fcg/io.hpp"
#include "fcg/pattern_groups.hpp"
#include "fcg/report.hpp"
#include "fcg/uniserial.hpp"
#include "fcg/verify.hpp"

namespace fcg {

namespace {

struct Globals {
  std::string format = "text";
  int jobs = 1;
  std::uint64_t max_elements = Caps{}.max_elements;
  int max_depth = 12;
  bool timing = false;
};

// Restores the process-wide depth cap when a command finishes.
class DepthCapGuard {
 public:
  explicit DepthCapGuard(int cap) : saved_(depth_cap()) { set_depth_cap(cap); }
  ~DepthCapGuard() { set_depth_cap(saved_); }
  DepthCapGuard(const DepthCapGuard&) = delete;
  DepthCapGuard& operator=(const DepthCapGuard&) = delete;

 private:
  int saved_;
};

OutputFormat parse_format(const std::string& f) {
  if (f == "kv") return OutputFormat::kv;
  if (f == "json") return OutputFormat::json;
  return OutputFormat::text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write '" + path + "'");
  f << text;
}

template <class F>
void timed(VerificationReport& rep, bool on, F&& body) {
  const std::size_t first = rep.claims.size();
  const auto start = std::chrono::steady_clock::now();
  body();
  if (!on) return;
  const double s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (std::size_t i = first; i < rep.claims.size(); ++i) rep.claims[i].seconds = s;
}

std::string join_ints(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t x : xs) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

std::string join_levels(const std::vector<int>& xs) {
  std::string s;
  for (int x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "{" + s + "}";
}

}  // namespace

int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finitely constrained groups of binary tree automorphisms", "fcg"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "kv", "json"}));
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1, 256));
  app.add_option("--max-elements", g.max_elements, "Largest group listed element by element");
  app.add_option("--max-depth", g.max_depth, "Deepest tree level handled")
      ->check(CLI::Range(1, kAbsoluteMaxDepth));
  app.add_flag("--timing", g.timing, "Report wall time per claim");

  int depth = 0;
  bool exhaustive = false, list = false;
  auto* enumerate = app.add_subcommand("enumerate", "Nearly maximal pattern groups of depth d");
  enumerate->add_option("--depth", depth)->required()->check(CLI::Range(2, 10));
  enumerate->add_flag("--exhaustive", exhaustive, "Also run the brute-force descent (d <= 4)");
  enumerate->add_flag("--list", list, "Print each group's constraint sets");

  std::string pattern_file;
  auto* hdim = app.add_subcommand("hdim", "Hausdorff dimension of a pattern group");
  hdim->add_option("--pattern-file", pattern_file)->required();

  std::string vector_bits, mode = "recursive";
  auto* height_cmd = app.add_subcommand("height", "Height of a level stabilizer vector");
  height_cmd->add_option("--depth", depth)->required()->check(CLI::Range(1, kAbsoluteMaxDepth));
  height_cmd->add_option("--vector", vector_bits)->required();
  height_cmd->add_option("--mode", mode)->check(CLI::IsMember({"recursive", "oracle"}));

  std::string group_file;
  auto* filt = app.add_subcommand("filtration", "Filtration of V by a group's action");
  filt->add_option("--depth", depth)->required()->check(CLI::Range(1, kAbsoluteMaxDepth));
  filt->add_option("--group-file", group_file)->required();

  std::string strategy, functional, complement_file;
  std::vector<int> levels;
  auto* tfg = app.add_subcommand("tfg", "Criteria against topological finite generation");
  tfg->add_option("--pattern-file", pattern_file)->required();
  tfg->add_option("--strategy", strategy)
      ->required()
      ->check(CLI::IsMember({"bs", "hom", "split", "maximal-full"}));
  tfg->add_option("--level", levels, "Levels for bs (repeatable)");
  tfg->add_option("--functional", functional, "Words of A for phi = alpha_A (hom)");
  tfg->add_option("--complement-file", complement_file, "Group file with K (split)");

  int level = 0;
  auto* additivity = app.add_subcommand("additivity", "Additive portraits of G_P(n)");
  additivity->add_option("--pattern-file", pattern_file)->required();
  additivity->add_option("--level", level)->required();

  std::string name = "grigorchuk", automaton_file, output;
  int k = 1, quotient = 0;
  bool report = false, export_flag = false;
  auto* automaton = app.add_subcommand("automaton", "Built-in or file automata");
  automaton->add_option("--name", name)->check(CLI::IsMember({"grigorchuk", "family"}));
  automaton->add_option("--k", k)->check(CLI::Range(1, 16));
  automaton->add_option("--automaton-file", automaton_file);
  auto* report_opt = automaton->add_flag("--report", report, "Checks on the family");
  auto* quotient_opt = automaton->add_option("--quotient", quotient, "Depth-n quotient group");
  auto* export_opt = automaton->add_flag("--export", export_flag, "Write the automaton file");
  report_opt->excludes(quotient_opt)->excludes(export_opt);
  quotient_opt->excludes(export_opt);
  automaton->add_option("--output", output, "File for --quotient or --export");

  std::string theorem;
  auto* verify = app.add_subcommand("verify", "Check the main results at one depth");
  verify->add_option("--theorem", theorem)
      ->required()
      ->check(CLI::IsMember({"main-1", "main-2", "heights", "growth", "all"}));
  verify->add_option("--depth", depth)->required()->check(CLI::Range(2, 10));

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const OutputFormat format = parse_format(g.format);
  const Caps caps{g.max_elements};
  try {
    DepthCapGuard guard(g.max_depth);
    VerificationReport rep;
    std::optional<std::string> raw;  // printed verbatim instead of a report

    if (*enumerate) {
      rep.title = "enumerate, depth " + std::to_string(depth);
      timed(rep, g.timing, [&] {
        const EnumerationResult res = enumerate_nearly_maximal(depth, 10, g.jobs);
        rep.set("count", std::to_string(res.groups.size()));
        rep.set("candidates", std::to_string(res.candidates));
        rep.set("valid_candidates", std::to_string(res.valid_candidates));
        if (list)
          for (std::size_t i = 0; i < res.groups.size(); ++i) {
            const SubordinateDecomposition& dec = res.groups[i].decomposition;
            rep.set("group." + std::to_string(i), "J=" + join_levels(dec.levels) +
                                                      " S=" + dec.s.to_string() +
                                                      " T=" + dec.t.to_string());
          }
        if (exhaustive) {
          std::vector<std::vector<Element>> a, b;
          for (const EnumeratedGroup& e : res.groups) a.push_back(e.group.group().pcgs());
          for (const GroupSet& s : exhaustive_scan(depth)) b.push_back(s.pcgs());
          std::sort(a.begin(), a.end());
          std::sort(b.begin(), b.end());
          rep.set("exhaustive_count", std::to_string(b.size()));
          rep.check("exhaustive.match", a == b, "brute-force descent finds the same groups");
        }
      });
    } else if (*hdim) {
      const PatternInput p = parse_pattern_file(read_text(pattern_file), caps);
      const HdimResult h = p.constraints ? hausdorff_dimension(*p.constraints)
                                         : hausdorff_dimension(p.group);
      rep.title = "hdim";
      rep.set("depth", std::to_string(p.depth));
      rep.set("hdim", h.reduced());
      rep.set("hdim.explicit", h.explicit_form());
    } else if (*height_cmd) {
      const StabVector v = StabVector::from_string(depth, vector_bits);
      rep.title = "height";
      rep.set("height", std::to_string(height(v, mode == "oracle" ? HeightMode::oracle
                                                                  : HeightMode::recursive)));
      rep.set("coset_class", std::to_string(coset_class(v)));
    } else if (*filt) {
      const GroupSet grp = to_group(parse_group_file(read_text(group_file)));
      if (grp.depth() != depth) throw DomainError("group file depth differs from --depth");
      rep.title = "filtration, depth " + std::to_string(depth);
      timed(rep, g.timing, [&] {
        const Filtration f = filtration(grp.pcgs(), depth);
        const UniserialVerdict u = is_uniserial(grp.pcgs(), depth);
        rep.set("dims", join_ints(f.dims()));
        rep.set("uniserial", f.uniserial() ? "yes" : "no");
        if (u.failing_level) rep.set("failing_level", std::to_string(*u.failing_level));
        rep.check("criterion-agrees", f.uniserial() == u.uniserial,
                  "alpha_k criterion and filtration agree");
      });
    } else if (*tfg) {
      const PatternInput p = parse_pattern_file(read_text(pattern_file), caps);
      TfgVerdict v;
      if (strategy == "bs") {
        TfgParams params;
        params.levels = levels;
        params.caps = caps;
        v = tfg_bs(p.group, params);
      } else if (strategy == "hom") {
        LevelSet a(p.depth);
        if (!functional.empty()) {
          a = parse_word_list(p.depth, functional);
        } else if (p.constraints && p.constraints->constraints().size() == 2) {
          // default: alpha_{S_0} + alpha_{T_0} for constraints S, T
          const auto& cs = p.constraints->constraints();
          for (const Word& w : cs[0].words())
            if (w.length() >= 2 && w.prefix(2) == Word::from_string("00")) a.insert(w);
          for (const Word& w : cs[1].words())
            if (w.length() >= 2 && w.prefix(2) == Word::from_string("10")) a.insert(w);
        } else {
          throw CLI::ValidationError("--functional", "required unless the file lists S and T");
        }
        v = tfg_hom(p.group, a, p.constraints);
      } else if (strategy == "split") {
        std::optional<std::vector<Element>> kg;
        if (!complement_file.empty())
          kg = parse_group_file(read_text(complement_file)).generators;
        v = tfg_split(p.group, kg);
      } else {
        v = tfg_maximal_full(p.group);
      }
      rep.title = "tfg";
      rep.set("strategy", v.strategy);
      rep.set("verdict", to_string(v.kind));
      rep.set("level", std::to_string(v.level));
      rep.set("witness", v.witness);
    } else if (*additivity) {
      const PatternInput p = parse_pattern_file(read_text(pattern_file), caps);
      rep.title = "additivity";
      timed(rep, g.timing, [&] {
        const AdditivityVerdict v = p.constraints ? additivity_check(*p.constraints, level)
                                                  : additivity_check(p.group, level, caps);
        rep.set("level", std::to_string(v.level));
        rep.set("method", v.method);
        rep.set("additive", v.additive ? "yes" : "no");
        if (v.witness) {
          rep.set("witness.g", v.witness->first.portrait());
          rep.set("witness.h", v.witness->second.portrait());
        }
        rep.check("additive", v.additive, v.detail);
      });
    } else if (*automaton) {
      const Automaton a = automaton_file.empty() ? builtin_automaton(name, k)
                                                 : parse_automaton_file(read_text(automaton_file));
      if (report) {
        if (!automaton_file.empty() || name != "family")
          throw CLI::ValidationError("--report", "only available for --name family");
        timed(rep, g.timing, [&] { rep = family_report(k); });
      } else if (*quotient_opt) {
        const GroupSet q = quotient_group(a, quotient);
        rep.title = "quotient, depth " + std::to_string(quotient);
        rep.set("order", q.order().str());
        rep.set("log2_order", std::to_string(q.log2_order()));
        if (quotient >= 2) {
          rep.set("stabilizer.log2_order",
                  std::to_string(level_stabilizer(q, quotient - 1).log2_order()));
          const bool essential = is_essential(q).essential;
          rep.set("essential", essential ? "yes" : "no");
          if (essential) rep.set("hdim", hausdorff_dimension(q).reduced());
        }
        if (!output.empty()) write_file(output, format_group_file(q));
      } else if (export_flag) {
        if (output.empty())
          raw = format_automaton_file(a);
        else
          write_file(output, format_automaton_file(a));
      } else {
        throw CLI::ValidationError("automaton", "one of --report, --quotient, --export is required");
      }
    } else if (*verify) {
      const VerifyOptions opt{g.jobs, caps, g.timing};
      if (theorem == "main-1") rep = verify_main1(depth, opt);
      else if (theorem == "main-2") rep = verify_main2(depth, opt);
      else if (theorem == "heights") rep = verify_heights(depth, opt);
      else if (theorem == "growth") rep = verify_growth(depth, opt);
      else rep = verify_all(depth, opt);
    }

    if (raw) {
      out << *raw;
      return kExitOk;
    }
    out << render(rep, format);
    return rep.passed() ? kExitOk : kExitFailed;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceCapExceeded& e) {
    err << "error: resource cap exceeded: " << e.what() << '\n';
    return kExitCap;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace fcg
