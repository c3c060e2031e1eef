// cholex: check, extract, run and inspect HOL/CHOL proof files.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cholex/extraction.h"
#include "cholex/hf.h"
#include "cholex/proof_file.h"
#include "cholex/semantics.h"
#include "cholex/soundness.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace cholex;

namespace {

constexpr const char* kProgramFormat = "cholex-program";
constexpr int kProgramVersion = 1;

struct Options {
  std::string mode;  // "", "hol" or "chol"
  uint64_t fuel = 10'000'000;
  bool trace = false;
  bool emit_izf = false;
  bool as_json = false;
};

// One stage outcome inside a statement report.
struct Stage {
  std::string name;
  std::optional<Error> error;
  std::string note;
  double ms = 0;
};

struct StatementReport {
  std::string name;
  sexpr::Pos pos;
  std::vector<Stage> stages;
  json extra = json::object();
  bool ok() const {
    return std::all_of(stages.begin(), stages.end(), [](const Stage& s) { return !s.error; });
  }
};

json error_json(const Error& e) {
  return {{"code", std::string(error_name(e.code()))}, {"message", e.message()}, {"path", e.path()}};
}

// `with_path` adds the error's own path (a proof position for kernel errors).
std::string error_text(const Error& e, bool with_path = true) {
  std::string s = std::string(error_name(e.code())) + ": " + e.message();
  if (with_path && !e.path().empty()) s += " [at " + e.path() + "]";
  return s;
}

template <class F>
bool run_stage(StatementReport& r, const std::string& name, const Options& o, F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  Stage s{name, std::nullopt, {}, 0};
  try {
    s.note = f();
  } catch (const Error& e) {
    s.error = e;
  }
  s.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (o.trace) std::cerr << "[" << r.name << "] " << name << " " << s.ms << " ms\n";
  r.stages.push_back(std::move(s));
  return !r.stages.back().error;
}

hol::LogicMode effective_mode(const proof_file::ProofFile& f, const Options& o) {
  if (o.mode == "hol") return hol::LogicMode::HOL;
  if (o.mode == "chol") return hol::LogicMode::CHOL;
  return f.mode;
}

const char* mode_name(hol::LogicMode m) { return m == hol::LogicMode::HOL ? "hol" : "chol"; }

// Emits the report and returns the exit code.
int emit(const std::string& command, const std::string& file, const char* mode,
         std::vector<StatementReport> reports, const std::optional<Error>& parse_error, const Options& o) {
  std::sort(reports.begin(), reports.end(),
            [](const StatementReport& a, const StatementReport& b) { return a.name < b.name; });
  bool all_ok = !parse_error;
  for (const auto& r : reports) all_ok = all_ok && r.ok();
  if (o.as_json) {
    json j;
    j["command"] = command;
    j["file"] = file;
    j["mode"] = mode;
    j["ok"] = all_ok;
    if (parse_error) j["parse_error"] = {{"stage", "parse"}, {"error", error_json(*parse_error)}};
    json arr = json::array();
    for (const auto& r : reports) {
      json s;
      s["name"] = r.name;
      s["line"] = r.pos.line;
      s["col"] = r.pos.col;
      s["ok"] = r.ok();
      json st = json::array();
      for (const auto& g : r.stages) {
        json x = {{"stage", g.name}, {"ok", !g.error}};
        if (!g.note.empty()) x["note"] = g.note;
        if (g.error) x["error"] = error_json(*g.error);
        st.push_back(x);
      }
      s["stages"] = st;
      for (auto& [k, v] : r.extra.items()) s[k] = v;
      arr.push_back(s);
    }
    j["statements"] = arr;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << command << " " << file << " (mode " << mode << ")\n";
    if (parse_error)
      std::cout << "  error stage=parse at " << file << (parse_error->path().empty() ? "" : ":" + parse_error->path())
                << ": " << error_text(*parse_error, false) << "\n";
    size_t bad = 0;
    for (const auto& r : reports) {
      if (r.ok()) {
        std::cout << "  " << r.name << ": ok";
        for (const auto& g : r.stages)
          if (!g.note.empty()) std::cout << "\n    " << g.note;
        std::cout << "\n";
        continue;
      }
      ++bad;
      for (const auto& g : r.stages)
        if (g.error) {
          std::cout << "  " << r.name << ": error stage=" << g.name << " at " << file << ":" << r.pos.str() << ": "
                    << error_text(*g.error) << "\n";
          break;
        }
    }
    std::cout << reports.size() << " statement(s), " << reports.size() - bad << " ok, " << bad << " failed\n";
  }
  return all_ok ? 0 : 1;
}

std::optional<proof_file::ProofFile> load(const std::string& path, std::optional<Error>& err) {
  try {
    return proof_file::parse_file(path);
  } catch (const Error& e) {
    err = e;
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// check

std::string certificate_note(const soundness::Certificate& c, const Options& o) {
  izf::Formula got = izf::izf_check(izf::Context{}, c.closed_proof());
  if (!izf::alpha_eq(got, c.closed_goal()))
    throw Error(ErrorCode::IllFormedProof, "certificate proves " + izf::pretty(got));
  if (!o.emit_izf) return {};
  return "goal " + izf::pretty(c.closed_goal()) + "\n    proof " + izf::print(c.closed_proof(), true);
}

int cmd_check(const std::string& file, const Options& o) {
  std::optional<Error> perr;
  auto f = load(file, perr);
  if (!f) return emit("check", file, o.mode.empty() ? "chol" : o.mode.c_str(), {}, perr, o);
  hol::LogicMode mode = effective_mode(*f, o);
  std::vector<StatementReport> out;
  for (const auto& s : f->statements) {
    StatementReport r{s.name, s.pos, {}, json::object()};
    bool ok = run_stage(r, "kernel", o, [&] {
      auto c = hol::check_proof(mode, s.proof, s.sequent);
      if (!c.ok()) throw *c.error;
      return std::string();
    });
    if (ok && mode == hol::LogicMode::CHOL)
      run_stage(r, "certificate", o,
                [&] { return certificate_note(soundness::translate_proof(s.proof, s.sequent), o); });
    out.push_back(std::move(r));
  }
  return emit("check", file, mode_name(mode), std::move(out), std::nullopt, o);
}

// ---------------------------------------------------------------------------
// extract / run

// The statement together with the declarations it depends on, as a
// standalone proof file.
std::string standalone_source(const proof_file::ProofFile& f, const proof_file::Statement& s) {
  proof_file::ProofFile g;
  g.mode = hol::LogicMode::CHOL;
  g.name = f.name;
  g.vars = f.vars;
  g.statements.push_back(s);
  return proof_file::print(g);
}

// Splits "stage: message" as produced by extract_hol.
std::pair<std::string, Error> split_stage(const Error& e) {
  const std::string& m = e.message();
  auto k = m.find(": ");
  if (k == std::string::npos) return {"extract", e};
  return {m.substr(0, k), Error(e.code(), m.substr(k + 2), e.path())};
}

int cmd_extract(const std::string& file, const std::vector<std::string>& only, const std::string& out_dir,
                const Options& o) {
  std::optional<Error> perr;
  auto f = load(file, perr);
  if (!f) return emit("extract", file, "chol", {}, perr, o);
  std::vector<StatementReport> out;
  for (const auto& wanted : only)
    if (!f->find(wanted)) {
      StatementReport r{wanted, {}, {}, json::object()};
      r.stages.push_back({"select", Error(ErrorCode::ResolutionError, "no statement named " + wanted), {}, 0});
      out.push_back(std::move(r));
    }
  for (const auto& s : f->statements) {
    if (!only.empty() && std::find(only.begin(), only.end(), s.name) == only.end()) continue;
    StatementReport r{s.name, s.pos, {}, json::object()};
    std::optional<extraction::HolExtraction> x;
    bool ok = run_stage(r, "kernel", o, [&] {
      auto c = hol::check_proof(hol::LogicMode::CHOL, s.proof, s.sequent);
      if (!c.ok()) throw *c.error;
      return std::string();
    });
    ok = ok && run_stage(r, "closed", o, [&] {
      if (!s.sequent.context.empty())
        throw Error(ErrorCode::NotExtractable, "statement has hypotheses");
      if (!s.sequent.goal.free_vars().empty())
        throw Error(ErrorCode::NotExtractable, "statement has free variables");
      return std::string();
    });
    if (ok) {
      extraction::ExtractOptions eo;
      eo.fuel = o.fuel;
      if (o.trace) eo.trace = &std::cerr;
      try {
        x = extraction::extract_hol(s.proof, s.sequent.goal, eo);
        for (const auto& st : x->report) {
          r.stages.push_back({st.stage, std::nullopt, {}, st.ms});
          if (o.trace) std::cerr << "[" << s.name << "] " << st.stage << " " << st.ms << " ms\n";
        }
      } catch (const Error& e) {
        auto [stage, err] = split_stage(e);
        r.stages.push_back({stage, err, {}, 0});
        ok = false;
      }
    }
    if (ok) {
      ok = run_stage(r, "typecheck", o, [&] {
        for (auto [v, t] : {std::pair{x->raw, x->raw_type}, std::pair{x->program, x->type}}) {
          auto rep = tt0::tt0_typecheck(v, t);
          if (!rep.ok()) throw *rep.error;
        }
        return std::string();
      });
    }
    if (ok) {
      std::string target;
      ok = run_stage(r, "sidecar", o, [&] {
        fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
        fs::create_directories(dir);
        target = (dir / (s.name + ".cxprog")).string();
        json side = {{"format", kProgramFormat},
                     {"version", kProgramVersion},
                     {"statement", s.name},
                     {"type", tt0::print(x->type)},
                     {"raw_type", tt0::print(x->raw_type)},
                     {"source", standalone_source(*f, s)}};
        std::ofstream os(target, std::ios::binary);
        if (!os) throw Error(ErrorCode::IoError, "cannot write " + target);
        os << side.dump(2) << "\n";
        return std::string();
      });
      r.extra["raw_type"] = tt0::print(x->raw_type);
      r.extra["type"] = tt0::print(x->type);
      r.extra["program"] = tt0::print(x->program);
      if (ok) r.extra["sidecar"] = target;
      r.stages.back().note = "raw " + tt0::print(x->raw_type) + "\n    type " + tt0::print(x->type) +
                             "\n    program " + tt0::print(x->program) + (ok ? "\n    wrote " + target : "");
      if (o.emit_izf)
        r.stages.back().note += "\n    prime " + izf::pretty(x->prime.formula);
    }
    out.push_back(std::move(r));
  }
  return emit("extract", file, "chol", std::move(out), std::nullopt, o);
}

int cmd_run(const std::string& sidecar, const std::vector<std::string>& args, const Options& o) {
  auto fail = [&](const std::string& stage, const Error& e) {
    if (o.as_json) {
      std::cout << json{{"command", "run"}, {"ok", false}, {"stage", stage}, {"error", error_json(e)}}.dump(2) << "\n";
    } else {
      std::cout << "run " << sidecar << ": error stage=" << stage << ": " << error_text(e) << "\n";
    }
    return 1;
  };
  json side;
  try {
    std::ifstream in(sidecar, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + sidecar);
    side = json::parse(in);
    if (side.value("format", "") != kProgramFormat || side.value("version", 0) != kProgramVersion)
      throw Error(ErrorCode::SyntaxError, "not a cholex program file");
  } catch (const Error& e) {
    return fail("load", e);
  } catch (const json::exception& e) {
    return fail("load", Error(ErrorCode::SyntaxError, e.what()));
  }
  std::string name = side.value("statement", "");
  std::optional<extraction::HolExtraction> x;
  try {
    auto f = proof_file::parse_text(side.value("source", ""));
    const auto* s = f.find(name);
    if (!s) throw Error(ErrorCode::ResolutionError, "program source has no statement " + name);
    auto c = hol::check_proof(hol::LogicMode::CHOL, s->proof, s->sequent);
    if (!c.ok()) throw *c.error;
    extraction::ExtractOptions eo;
    eo.fuel = o.fuel;
    x = extraction::extract_hol(s->proof, s->sequent.goal, eo);
    if (tt0::print(x->type) != side.value("type", ""))
      throw Error(ErrorCode::IllTyped, "program type " + tt0::print(x->type) + " differs from the recorded " +
                                           side.value("type", ""));
  } catch (const Error& e) {
    return fail("load", e);
  }
  tt0::Value v = x->program;
  std::ostream* trace = o.trace ? &std::cerr : nullptr;
  for (size_t i = 0; i < args.size(); ++i) {
    std::string stage = "argument " + std::to_string(i + 1);
    try {
      if (!v.is(tt0::ValueKind::Fun))
        throw Error(ErrorCode::DomainMismatch, "too many arguments: the result " + tt0::print(v) + " is not a function");
      hol::Term t = proof_file::parse_term_text(args[i]);
      tt0::Value a = extraction::inject(t);
      stage = "apply " + std::to_string(i + 1);
      if (trace) *trace << "apply to " << args[i] << "\n";
      v = tt0::apply_value(v, a);
    } catch (const Error& e) {
      return fail(stage, e);
    }
  }
  if (o.as_json) {
    std::cout << json{{"command", "run"}, {"ok", true}, {"statement", name}, {"type", side.value("type", "")},
                      {"arguments", args}, {"result", tt0::print(v)}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << tt0::print(v) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// semantics

int cmd_semantics(const std::string& file, const std::string& term_text, unsigned cutoff, const Options& o) {
  auto describe = [&](const hol::Term& t, json& out) {
    hol::Type ty = hol::infer_type(t);
    sem::Env env;
    for (const auto& v : t.free_vars()) env = env.bind(v, izf::Term::var(v.name));
    izf::Term d = sem::denote_term(t, env);
    out["hol_type"] = hol::print_type(ty);
    out["type_denotation"] = izf::pretty(sem::denote_type(ty));
    out["denotation"] = izf::pretty(d);
    if (ty == hol::Type::prop()) {
      izf::Formula h = sem::holds(d);
      out["holds"] = izf::pretty(h);
      if (t.free_vars().empty()) out["oracle"] = hf::truth_name(hf::hf_eval_formula(h, cutoff));
    } else if (t.free_vars().empty()) {
      auto hv = hf::hf_eval_term(d, cutoff);
      out["oracle"] = hv ? hv->str() : std::string("unknown");
    }
  };
  auto print_text = [&](const std::string& label, const json& j) {
    std::cout << label << "\n";
    for (auto& [k, v] : j.items()) std::cout << "  " << k << ": " << v.get<std::string>() << "\n";
  };
  if (!term_text.empty()) {
    json j;
    try {
      describe(proof_file::parse_term_text(term_text), j);
    } catch (const Error& e) {
      if (o.as_json) std::cout << json{{"ok", false}, {"error", error_json(e)}}.dump(2) << "\n";
      else std::cout << "semantics: error: " << error_text(e) << "\n";
      return 1;
    }
    if (o.as_json) std::cout << json{{"ok", true}, {"term", term_text}, {"result", j}}.dump(2) << "\n";
    else print_text(term_text, j);
    return 0;
  }
  std::optional<Error> perr;
  auto f = load(file, perr);
  if (!f) return emit("semantics", file, "chol", {}, perr, o);
  std::vector<StatementReport> out;
  for (const auto& s : f->statements) {
    StatementReport r{s.name, s.pos, {}, json::object()};
    run_stage(r, "denote", o, [&] {
      json j;
      describe(s.sequent.goal, j);
      std::string note;
      for (auto& [k, v] : j.items()) {
        r.extra[k] = v;
        note += (note.empty() ? "" : "\n    ") + k + " " + v.get<std::string>();
      }
      return note;
    });
    out.push_back(std::move(r));
  }
  return emit("semantics", file, mode_name(f->mode), std::move(out), std::nullopt, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cholex: HOL/CHOL proof checking and program extraction through IZF"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c) {
    c->add_option("--mode", o.mode, "Logic: hol or chol (default: the file header)")
        ->check(CLI::IsMember({"hol", "chol"}));
    c->add_option("--fuel", o.fuel, "Reduction budget per engine run");
    c->add_flag("--trace", o.trace, "Print stage timings and reduction steps to stderr");
    c->add_flag("--emit-izf", o.emit_izf, "Print the IZF certificates");
    c->add_flag("--json", o.as_json, "Machine-readable report");
  };

  std::string file, out_dir, sidecar, term_text;
  std::vector<std::string> statements, args;
  unsigned cutoff = hf::kDefaultCutoff;

  auto* check = app.add_subcommand("check", "Check every statement; CHOL statements also get an IZF certificate");
  check->add_option("file", file, "Proof file")->required();
  common(check);

  auto* extract = app.add_subcommand("extract", "Extract programs and write one .cxprog sidecar per statement");
  extract->add_option("file", file, "Proof file")->required();
  extract->add_option("-s,--statement", statements, "Only these statements");
  extract->add_option("-o,--out-dir", out_dir, "Directory for sidecar files (default: .)");
  common(extract);

  auto* run = app.add_subcommand("run", "Apply an extracted program to arguments");
  run->add_option("program", sidecar, "Sidecar written by extract")->required();
  run->add_option("args", args, "Closed HOL terms, e.g. 7 or (pair 1 true)");
  common(run);

  auto* semantics = app.add_subcommand("semantics", "Print set-theoretic denotations");
  semantics->add_option("file", file, "Proof file");
  semantics->add_option("-t,--term", term_text, "A single closed term instead of a file");
  semantics->add_option("--cutoff", cutoff, "Oracle cutoff for the natural numbers");
  common(semantics);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*check) return cmd_check(file, o);
    if (*extract) return cmd_extract(file, statements, out_dir, o);
    if (*run) return cmd_run(sidecar, args, o);
    if (*semantics) {
      if (file.empty() == term_text.empty()) {
        std::cerr << "semantics: give either a file or --term\n";
        return 2;
      }
      return cmd_semantics(file, term_text, cutoff, o);
    }
  } catch (const Error& e) {
    std::cerr << "cholex: " << error_text(e) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "cholex: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
