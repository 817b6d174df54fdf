#include "subnormal/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "subnormal/closed_forms.hpp"
#include "subnormal/error.hpp"
#include "subnormal/graph.hpp"
#include "subnormal/subgroup.hpp"
#include "subnormal/table.hpp"
#include "subnormal/transversal.hpp"
#include "subnormal/walks.hpp"

namespace subnormal {

namespace {

std::string decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class Runner {
 public:
  Runner(RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  SearchOptions search() const { return {cfg_.workers, cfg_.node_budget}; }

  // Writes the table in the chosen format; returns the exit code it implies.
  int emit(const TextTable& table) const {
    std::ostringstream buf;
    if (cfg_.format == "json") {
      write_json(buf, table);
    } else {
      write_csv(buf, table);
    }
    text(buf.str());
    return table.truncated ? kExitBudget : kExitOk;
  }

  void text(const std::string& s) const {
    if (cfg_.out.empty()) {
      out_ << s;
      return;
    }
    std::ofstream f(cfg_.out, std::ios::binary);
    if (!f) throw InvalidInput("cannot open output file " + cfg_.out);
    f << s;
  }

  Word word(const std::string& text, int rank) const { return Word::parse(text, rank); }

 private:
  RunConfig& cfg_;
  std::ostream& out_;
};

TextTable count_text(const CountTable& t, const std::string& column) {
  TextTable out;
  out.columns = {"n", column};
  for (int n = 0; n <= t.nmax(); ++n) out.rows.push_back({std::to_string(n), t[n].get_str()});
  if (t.truncated) {
    out.truncated = true;
    out.truncation_note = "node budget exhausted; rows complete up to n=" + std::to_string(t.nmax()) +
                          " of " + std::to_string(t.requested_nmax);
  }
  return out;
}

std::string show_word(const Word& w) { return w.str(); }

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  Runner run(cfg, out);
  std::function<int()> action;

  CLI::App app{"Subnormal closures of a generator in free groups"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--workers", cfg.workers, "worker threads for searches")->check(CLI::Range(1, 1024));
  app.add_option("--budget-nodes", cfg.node_budget, "node budget for searches")->check(CLI::PositiveNumber);
  app.add_option("--memo-bytes", cfg.memo_bytes, "byte budget of the reference oracle cache")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed of the random generator");
  app.add_option("--out", cfg.out, "output file (default: standard output)");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));

  auto rank_level = [&](CLI::App* sub) {
    sub->add_option("--rank", cfg.rank, "rank of the free group")->check(CLI::Range(1, kMaxRank));
    sub->add_option("--level", cfg.level, "level of the subnormal closure")->check(CLI::Range(0, 8));
  };

  std::string word_text;
  bool reference = false;

  auto* member = app.add_subcommand("member", "decide membership of WORD in N_level");
  rank_level(member);
  member->add_option("word", word_text, "word, e.g. yxY")->required();
  member->add_flag("--reference", reference, "use the literal rewriting oracle");
  member->callback([&] {
    action = [&] {
      const Word w = run.word(word_text, cfg.rank);
      bool answer;
      if (reference) {
        MembershipOracle oracle(cfg.rank, cfg.memo_bytes);
        answer = oracle.is_member(w, cfg.level);
      } else {
        answer = is_member(w, {cfg.rank, cfg.level});
      }
      run.text(answer ? "true\n" : "false\n");
      return kExitOk;
    };
  });

  auto* decompose = app.add_subcommand("decompose", "write a member of N_level in the free basis");
  rank_level(decompose);
  decompose->add_option("word", word_text, "word")->required();
  decompose->callback([&] {
    action = [&] {
      const auto factors = decompose_in_basis(run.word(word_text, cfg.rank), {cfg.rank, cfg.level});
      TextTable t;
      t.columns = {"index", "conjugator", "exponent"};
      for (std::size_t i = 0; i < factors.size(); ++i) {
        t.rows.push_back({std::to_string(i), show_word(factors[i].conjugator),
                          std::to_string(factors[i].exponent)});
      }
      return run.emit(t);
    };
  });

  int bound = 8;
  bool witness = false;
  auto* dvalue = app.add_subcommand("dvalue", "shortest element of N_level outside <x>");
  rank_level(dvalue);
  dvalue->add_option("--bound", bound, "largest length searched")->check(CLI::Range(1, 60000));
  dvalue->add_flag("--witness", witness, "also print the lexicographically first witness");
  dvalue->callback([&] {
    action = [&] {
      const auto r = min_new_length({cfg.rank, cfg.level}, bound, run.search());
      if (!r) {
        run.text("not-found\n");
      } else {
        run.text(std::to_string(r->length) + (witness ? " " + r->witness.str() : "") + "\n");
      }
      return kExitOk;
    };
  });

  auto* growth = app.add_subcommand("growth", "g(n) = #{w in N_level : |w| <= n}");
  rank_level(growth);
  growth->add_option("--nmax", cfg.nmax, "largest length")->check(CLI::Range(0, 60000));
  growth->callback([&] {
    action = [&] {
      return run.emit(count_text(growth_table({cfg.rank, cfg.level}, cfg.nmax, run.search()), "count"));
    };
  });

  bool use_dp = false;
  auto* cogrowth = app.add_subcommand("cogrowth", "f(n) = #{w in T : |w| <= n}");
  rank_level(cogrowth);
  cogrowth->add_option("--nmax", cfg.nmax, "largest length")->check(CLI::Range(0, 60000));
  cogrowth->add_flag("--dp", use_dp, "dynamic program (rank 2, level 2 only)");
  cogrowth->callback([&] {
    action = [&] {
      CountTable t;
      if (use_dp) {
        if (cfg.rank != 2 || cfg.level != 2) throw InvalidInput("--dp needs --rank 2 --level 2");
        t = cogrowth_dp_level2(cfg.nmax);
      } else {
        t = cogrowth_table({cfg.rank, cfg.level}, cfg.nmax, run.search());
      }
      return run.emit(cogrowth_text(t, cfg.rank));
    };
  });

  std::string graph_file;
  auto* rate = app.add_subcommand("rate", "reduced closed paths of a finite graph");
  rate->add_option("--graph", graph_file, "graph file")->required();
  rate->add_option("--nmax", cfg.nmax, "largest length")->check(CLI::Range(0, 60000));
  rate->callback([&] {
    action = [&] {
      std::ifstream in(graph_file);
      if (!in) throw InvalidInput("cannot open graph file " + graph_file);
      const auto nu = count_reduced_closed_paths(parse_graph(in), cfg.nmax);
      const auto rates = rate_sequence(nu);
      TextTable t;
      t.columns = {"n", "closed", "nu", "root", "ratio"};
      for (int n = 0; n <= nu.nmax(); ++n) {
        t.rows.push_back({std::to_string(n), nu.spherical[static_cast<std::size_t>(n)].get_str(),
                          nu[n].get_str(), n ? decimal(rates[static_cast<std::size_t>(n) - 1].root) : "",
                          n ? decimal(rates[static_cast<std::size_t>(n) - 1].ratio) : ""});
      }
      return run.emit(t);
    };
  });

  std::vector<std::string> gens;
  auto* stallings = app.add_subcommand("stallings", "folded core graph of a subgroup");
  stallings->add_option("--rank", cfg.rank, "rank of the free group")->check(CLI::Range(1, kMaxRank));
  stallings->add_option("--gen", gens, "generator word (repeatable)");
  stallings->callback([&] {
    action = [&] {
      std::vector<Word> words;
      for (const auto& g : gens) words.push_back(run.word(g, cfg.rank));
      std::ostringstream os;
      write_graph(os, stallings_graph(words, cfg.rank));
      run.text(os.str());
      return kExitOk;
    };
  });

  auto* walk = app.add_subcommand("walk", "exact walk statistics");
  walk->require_subcommand(1);
  int depth = 20;
  int mmax = 50;
  int mzeros = 50;
  int nclass = 6;
  int nsample = 10;

  auto* ucounts = walk->add_subcommand("u-counts", "#U_n and P_n");
  ucounts->add_option("--nmax", cfg.nmax, "largest length")->check(CLI::Range(0, 5000));
  ucounts->callback([&] {
    action = [&] {
      const auto u = count_U_table(cfg.nmax);
      TextTable t;
      t.columns = {"n", "count", "P"};
      for (int n = 0; n <= cfg.nmax; ++n) {
        Rational p(u[static_cast<std::size_t>(n)], count_reduced(n, 2));
        p.canonicalize();
        t.rows.push_back({std::to_string(n), u[static_cast<std::size_t>(n)].get_str(), fraction_string(p)});
      }
      return run.emit(t);
    };
  });

  auto* jump = walk->add_subcommand("jump-law", "jump law of the observed walk, two ways");
  jump->add_option("--depth", depth, "smallest jump listed is -depth")->check(CLI::Range(0, 100000));
  jump->callback([&] {
    action = [&] {
      const auto law = jump_law_exact(depth);
      TextTable t;
      t.columns = {"k", "closed_form", "excursion_dp"};
      for (std::size_t i = 0; i < law.closed_form.size(); ++i) {
        t.rows.push_back({std::to_string(1 - static_cast<int>(i)), fraction_string(law.closed_form[i]),
                          fraction_string(law.excursion_dp[i])});
      }
      t.rows.push_back({"mass", fraction_string(law.mass), fraction_string(law.mass)});
      t.rows.push_back({"mass_tail", fraction_string(law.mass_tail), fraction_string(law.mass_tail)});
      t.rows.push_back({"mean", fraction_string(law.mean), fraction_string(law.mean)});
      t.rows.push_back({"mean_tail", fraction_string(law.mean_tail), fraction_string(law.mean_tail)});
      return run.emit(t);
    };
  });

  auto* positive = walk->add_subcommand("positive", "p_m = P(z_1 > 0, ..., z_m > 0)");
  positive->add_option("--mmax", mmax, "largest m")->check(CLI::Range(1, 2000));
  positive->callback([&] {
    action = [&] {
      const auto p = positive_walk_prob(mmax);
      TextTable t;
      t.columns = {"m", "p", "p_sqrt_m"};
      for (int m = 1; m <= mmax; ++m) {
        const Rational& q = p[static_cast<std::size_t>(m) - 1];
        t.rows.push_back({std::to_string(m), fraction_string(q), decimal(to_double(q) * std::sqrt(m))});
      }
      return run.emit(t);
    };
  });

  auto* zeros = walk->add_subcommand("zeros", "q_m for a simple walk, m = 1..M");
  zeros->add_option("--m", mzeros, "largest m")->check(CLI::Range(1, kZeroCountCap));
  zeros->callback([&] {
    action = [&] {
      TextTable t;
      t.columns = {"m", "threshold", "q"};
      for (int m = 1; m <= mzeros; ++m) {
        t.rows.push_back({std::to_string(m), std::to_string(zero_threshold(m)),
                          fraction_string(zero_count_tail(m))});
      }
      return run.emit(t);
    };
  });

  auto* classes = walk->add_subcommand("classes", "words of length n per reduced form");
  classes->add_option("--n", nclass, "word length")->check(CLI::Range(0, 9));
  classes->add_option("--rank", cfg.rank, "rank")->check(CLI::Range(1, 3));
  classes->callback([&] {
    action = [&] {
      const auto c = reduced_form_class_counts(nclass, cfg.rank);
      TextTable t;
      t.columns = {"k", "count", "classes"};
      for (int k = 0; k <= nclass; ++k) {
        t.rows.push_back({std::to_string(k), c.count[static_cast<std::size_t>(k)].get_str(),
                          std::to_string(c.classes[static_cast<std::size_t>(k)])});
      }
      return run.emit(t);
    };
  });

  int samples = 1;
  auto* sample = walk->add_subcommand("sample", "uniform reduced words");
  sample->add_option("--n", nsample, "word length")->check(CLI::Range(0, 1000000));
  sample->add_option("--count", samples, "number of words")->check(CLI::Range(1, 1000000));
  sample->callback([&] {
    action = [&] {
      WalkSampler sampler(cfg.seed, 2);
      std::string s;
      for (int i = 0; i < samples; ++i) s += sampler.sample(nsample).str() + "\n";
      run.text(s);
      return kExitOk;
    };
  });

  auto* formulas = app.add_subcommand("formulas", "closed-form counts against enumeration");
  formulas->require_subcommand(1);
  auto* check = formulas->add_subcommand("check", "pass/fail matrix per formula and cell");
  check->add_option("--nmax", cfg.nmax, "largest length")->check(CLI::Range(1, 10));
  check->callback([&] {
    action = [&] {
      TextTable t;
      t.columns = {"formula", "cell", "closed_form", "enumeration", "pass", "degenerate"};
      bool all = true;
      for (const auto& r : formulas_check(cfg.nmax)) {
        all = all && r.pass;
        t.rows.push_back({r.equation, r.cell, r.formula, r.oracle, r.pass ? "pass" : "FAIL",
                          r.degenerate ? "yes" : "no"});
      }
      const int code = run.emit(t);
      return all ? code : kExitCheckFailed;
    };
  });

  auto* factorize = app.add_subcommand("factorize", "blocks of a word of T+ at its axis returns");
  factorize->add_option("word", word_text, "word over x, y")->required();
  factorize->callback([&] {
    action = [&] {
      TextTable t;
      t.columns = {"rising", "core", "falling", "orientation", "closed"};
      for (const auto& b : tplus_factorize(run.word(word_text, 2))) {
        t.rows.push_back({std::to_string(b.rising), show_word(b.core), std::to_string(b.falling),
                          b.orientation > 0 ? "+" : "-", b.closed ? "yes" : "no"});
      }
      return run.emit(t);
    };
  });

  auto* crossings = app.add_subcommand("crossings", "crossing number of a word over x, y");
  crossings->add_option("word", word_text, "word")->required();
  crossings->callback([&] {
    action = [&] {
      run.text(std::to_string(crossing_number(run.word(word_text, 2))) + "\n");
      return kExitOk;
    };
  });

  auto* reflect_cmd = app.add_subcommand("reflect", "mirror the lower excursions of a word of S_n");
  reflect_cmd->add_option("word", word_text, "word")->required();
  reflect_cmd->callback([&] {
    action = [&] {
      run.text(reflect(run.word(word_text, 2)).str() + "\n");
      return kExitOk;
    };
  });

  auto* lift = app.add_subcommand("lift", "shorten the lower pieces of a word of T+");
  lift->add_option("word", word_text, "word")->required();
  lift->callback([&] {
    action = [&] {
      run.text(bridge_lift(run.word(word_text, 2)).str() + "\n");
      return kExitOk;
    };
  });

  std::vector<const char*> argv{"subnormal"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInvalidInput;
  }

  try {
    return action ? action() : kExitInvalidInput;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace subnormal
