#include "ellgraph/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include "ellgraph/ellipticity.hpp"
#include "ellgraph/error.hpp"
#include "ellgraph/nielsen.hpp"
#include "ellgraph/stallings.hpp"
#include "ellgraph/whitehead.hpp"

namespace ellgraph::cli {

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;

struct AlphabetArgs {
  std::optional<std::size_t> rank;
  std::optional<std::string> chars;

  Alphabet get() const {
    if (rank && chars) {
      throw Error(ErrorKind::invalid_argument, "give either -n or --alphabet, not both");
    }
    if (chars) {
      return Alphabet::from_chars(*chars);
    }
    if (!rank) {
      throw Error(ErrorKind::invalid_argument, "missing alphabet: expected -n <rank> or --alphabet <chars>");
    }
    if (*rank == 0 || *rank > 26) {
      throw Error(ErrorKind::invalid_argument, "-n must be between 1 and 26");
    }
    return Alphabet::standard(*rank);
  }
};

struct Session {
  std::ostringstream out;
  std::string_view stdin_text;
  std::function<int()> action;
};

// Each subcommand carries its own alphabet options so they can follow the
// subcommand name: `member -n 2 baB -w baaB`.
CLI::App* command(CLI::App& app, const std::string& name, const std::string& help,
                  const std::string& grammar, AlphabetArgs& alpha) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("-n,--rank", alpha.rank, "free group rank; generators a, b, c, ...");
  sub->add_option("--alphabet", alpha.chars, "generator letters, e.g. xyz");
  sub->footer("stdout: " + grammar);
  return sub;
}

std::vector<Word> words_of(const std::vector<std::string>& tokens, const Alphabet& al) {
  std::vector<Word> out;
  for (const std::string& t : tokens) {
    for (Word& w : parse_generators(t, al)) {
      out.push_back(std::move(w));
    }
  }
  return out;
}

WordTuple tuple_of(const std::vector<std::string>& tokens, const Alphabet& al) {
  WordTuple t;
  for (const Word& w : words_of(tokens, al)) {
    t.entries.emplace_back(w);
  }
  return t;
}

std::string join(const std::vector<Word>& ws, const Alphabet& al) {
  std::string s;
  for (const Word& w : ws) {
    s += (s.empty() ? "" : " ") + format_word(w, al);
  }
  return s;
}

std::string join(const WordTuple& t, const Alphabet& al) {
  std::string s;
  for (const CyclicWord& w : t.entries) {
    s += (s.empty() ? "" : " ") + format_word(w, al);
  }
  return s;
}

int boolean(std::ostream& out, bool value) {
  out << (value ? "true" : "false") << '\n';
  return value ? kYes : kNo;
}

Factor factor_of(const std::string& s) {
  if (s == "A" || s == "a") {
    return Factor::a;
  }
  if (s == "B" || s == "b") {
    return Factor::b;
  }
  throw Error(ErrorKind::parse, "factor '" + s + "': expected A or B");
}

std::string read_source(const std::string& path, std::string_view stdin_text) {
  if (path == "-") {
    return std::string(stdin_text);
  }
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::invalid_argument, "cannot read graph file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit_graph(std::ostream& out, const XDigraph& g, const Alphabet& al, bool dot) {
  out << format_graph(g, al);
  if (dot) {
    out << format_dot(g, al);
  }
}

void build(CLI::App& app, Session& s) {
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto word = std::make_shared<std::string>();
    auto* c = command(app, "reduce", "freely reduce a word", "<reduced word>, 1 if trivial",
                      *alpha);
    c->add_option("word", *word)->required();
    c->callback([&s, alpha, word] {
      s.action = [&s, alpha, word] {
        Alphabet al = alpha->get();
        s.out << format_word(parse_word(*word, al), al) << '\n';
        return kYes;
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto word = std::make_shared<std::string>();
    auto conj = std::make_shared<bool>(false);
    auto* c = command(app, "cyclic", "cyclic normal form (least rotation)",
                      "<cyclic word> [conj=<conjugator>]", *alpha);
    c->add_option("word", *word)->required();
    c->add_flag("--conjugator", *conj, "also print z with w = z·core·z⁻¹");
    c->callback([&s, alpha, word, conj] {
      s.action = [&s, alpha, word, conj] {
        Alphabet al = alpha->get();
        CyclicReduction r = cyclic_reduce(parse_word(*word, al));
        s.out << format_word(r.core, al);
        if (*conj) {
          s.out << " conj=" << format_word(r.conjugator, al);
        }
        s.out << '\n';
        return kYes;
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto gens = std::make_shared<std::vector<std::string>>();
    auto dot = std::make_shared<bool>(false);
    auto* c = command(app, "graph", "Stallings graph of the subgroup generated by the words",
                      "v <count> / base <i> / e <from> <to> <label> lines", *alpha);
    c->add_option("generators", *gens)->required();
    c->add_flag("--dot", *dot, "append a DOT rendering");
    c->callback([&s, alpha, gens, dot] {
      s.action = [&s, alpha, gens, dot] {
        Alphabet al = alpha->get();
        emit_graph(s.out, build_subgroup(words_of(*gens, al), al).graph(), al, *dot);
        return kYes;
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto gens = std::make_shared<std::vector<std::string>>();
    auto word = std::make_shared<std::string>();
    auto* c = command(app, "member", "is the word in the subgroup?", "true | false", *alpha);
    c->add_option("generators", *gens)->required();
    c->add_option("-w,--word", *word, "word to test")->required();
    c->callback([&s, alpha, gens, word] {
      s.action = [&s, alpha, gens, word] {
        Alphabet al = alpha->get();
        Subgroup h = build_subgroup(words_of(*gens, al), al);
        return boolean(s.out, contains(h, parse_word(*word, al)));
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto gens = std::make_shared<std::vector<std::string>>();
    auto* c = command(app, "basis", "free basis read off a spanning tree",
                      "<words...>, 1 for the trivial subgroup", *alpha);
    c->add_option("generators", *gens)->required();
    c->callback([&s, alpha, gens] {
      s.action = [&s, alpha, gens] {
        Alphabet al = alpha->get();
        auto basis = spanning_tree_basis(build_subgroup(words_of(*gens, al), al));
        s.out << (basis.empty() ? "1" : join(basis, al)) << '\n';
        return kYes;
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto gens = std::make_shared<std::vector<std::string>>();
    auto dot = std::make_shared<bool>(false);
    auto* c = command(app, "type", "type graph (hanging path at the base removed)",
                      "graph lines as for `graph`", *alpha);
    c->add_option("generators", *gens)->required();
    c->add_flag("--dot", *dot, "append a DOT rendering");
    c->callback([&s, alpha, gens, dot] {
      s.action = [&s, alpha, gens, dot] {
        Alphabet al = alpha->get();
        emit_graph(s.out, type_graph(build_subgroup(words_of(*gens, al), al)), al, *dot);
        return kYes;
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto h = std::make_shared<std::string>();
    auto k = std::make_shared<std::string>();
    auto dot = std::make_shared<bool>(false);
    auto* c = command(app, "intersect", "H ∩ K; each side a quoted list of generators",
                      "graph lines as for `graph`, then `basis <words...>`", *alpha);
    c->add_option("H", *h)->required();
    c->add_option("K", *k)->required();
    c->add_flag("--dot", *dot, "append a DOT rendering");
    c->callback([&s, alpha, h, k, dot] {
      s.action = [&s, alpha, h, k, dot] {
        Alphabet al = alpha->get();
        Subgroup i = intersect(build_subgroup(parse_generators(*h, al), al),
                               build_subgroup(parse_generators(*k, al), al));
        emit_graph(s.out, i.graph(), al, *dot);
        auto basis = spanning_tree_basis(i);
        s.out << "basis " << (basis.empty() ? "1" : join(basis, al)) << '\n';
        return kYes;
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto h = std::make_shared<std::string>();
    auto k = std::make_shared<std::string>();
    auto* c = command(app, "conjugate", "are H and K conjugate subgroups?", "true | false",
                      *alpha);
    c->add_option("H", *h)->required();
    c->add_option("K", *k)->required();
    c->callback([&s, alpha, h, k] {
      s.action = [&s, alpha, h, k] {
        Alphabet al = alpha->get();
        return boolean(s.out, conjugate_subgroups(build_subgroup(parse_generators(*h, al), al),
                                                  build_subgroup(parse_generators(*k, al), al)));
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto g = std::make_shared<std::string>();
    auto h = std::make_shared<std::string>();
    auto based = std::make_shared<bool>(false);
    auto* c = command(app, "iso", "are two graph files isomorphic X-digraphs? (- is stdin)",
                      "true | false", *alpha);
    c->add_option("first", *g)->required();
    c->add_option("second", *h)->required();
    c->add_flag("--based", *based, "the isomorphism must send base to base");
    c->callback([&s, alpha, g, h, based] {
      s.action = [&s, alpha, g, h, based] {
        Alphabet al = alpha->get();
        XDigraph x = parse_graph(read_source(*g, s.stdin_text), al);
        XDigraph y = parse_graph(read_source(*h, s.stdin_text), al);
        return boolean(s.out, *based ? based_isomorphic(x, y) : digraph_isomorphic(x, y));
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto words = std::make_shared<std::vector<std::string>>();
    auto trace = std::make_shared<bool>(false);
    auto* c = command(app, "wmin", "Whitehead-minimize a tuple of cyclic words",
                      "<minimal tuple> then, with --trace, one automorphism per line", *alpha);
    c->add_option("words", *words)->required();
    c->add_flag("--trace", *trace, "print the descent");
    c->callback([&s, alpha, words, trace] {
      s.action = [&s, alpha, words, trace] {
        Alphabet al = alpha->get();
        Minimization m = minimize_tuple(tuple_of(*words, al), al.rank());
        s.out << join(m.minimal, al) << '\n';
        if (*trace) {
          for (const WhiteheadAut& t : m.descent) {
            s.out << format_whitehead(t, al) << '\n';
          }
        }
        return kYes;
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto words = std::make_shared<std::vector<std::string>>();
    auto count = std::make_shared<bool>(false);
    auto* c = command(app, "orbit", "minimal-length Whitehead orbit of a tuple",
                      "one tuple per line in discovery order, or the count with --count",
                      *alpha);
    c->add_option("words", *words)->required();
    c->add_flag("--count", *count, "print only the orbit size");
    c->callback([&s, alpha, words, count] {
      s.action = [&s, alpha, words, count] {
        Alphabet al = alpha->get();
        WordTuple m = minimize_tuple(tuple_of(*words, al), al.rank()).minimal;
        auto orbit = equal_length_orbit(m, al.rank());
        if (*count) {
          s.out << orbit.size() << '\n';
        } else {
          for (const WordTuple& t : orbit) {
            s.out << join(t, al) << '\n';
          }
        }
        return kYes;
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto word = std::make_shared<std::string>();
    auto* c = command(app, "primitive", "is the word part of a basis?", "true | false", *alpha);
    c->add_option("word", *word)->required();
    c->callback([&s, alpha, word] {
      s.action = [&s, alpha, word] {
        Alphabet al = alpha->get();
        return boolean(s.out, is_primitive(parse_word(*word, al), al.rank()));
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto v = std::make_shared<std::string>();
    auto w = std::make_shared<std::string>();
    auto* c = command(app, "good", "classify a pair of cyclic words as given",
                      "frugal | disjoint | both | neither (exit 1 on neither)", *alpha);
    c->add_option("v", *v)->required();
    c->add_option("w", *w)->required();
    c->callback([&s, alpha, v, w] {
      s.action = [&s, alpha, v, w] {
        Alphabet al = alpha->get();
        PairClass cls = classify_pair(parse_cyclic_word(*v, al), parse_cyclic_word(*w, al),
                                      al.rank());
        s.out << to_string(cls) << '\n';
        return is_good(cls) ? kYes : kNo;
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto s1 = std::make_shared<std::string>();
    auto s2 = std::make_shared<std::string>();
    auto* c = command(app, "dist2-split",
                      "is some nontrivial element elliptic to both splittings?",
                      "yes witness=<cyclic word> | no", *alpha);
    c->add_option("first", *s1, "split <words> | <words>")->required();
    c->add_option("second", *s2, "split <words> | <words>")->required();
    c->callback([&s, alpha, s1, s2] {
      s.action = [&s, alpha, s1, s2] {
        Alphabet al = alpha->get();
        EllipticityAnswer a =
            splittings_distance_two(parse_splitting(*s1, al), parse_splitting(*s2, al));
        if (!a.decision) {
          s.out << "no\n";
          return kNo;
        }
        s.out << "yes witness=" << format_word(*a.element, al) << '\n';
        return kYes;
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto v = std::make_shared<std::string>();
    auto w = std::make_shared<std::string>();
    auto* c = command(app, "dist2-word", "are both words elliptic to one free splitting?",
                      "yes witness=split <words> | <words> | no", *alpha);
    c->add_option("v", *v)->required();
    c->add_option("w", *w)->required();
    c->callback([&s, alpha, v, w] {
      s.action = [&s, alpha, v, w] {
        Alphabet al = alpha->get();
        EllipticityAnswer a = words_distance_two(parse_cyclic_word(*v, al),
                                                 parse_cyclic_word(*w, al), al.rank());
        if (!a.decision) {
          s.out << "no\n";
          return kNo;
        }
        s.out << "yes witness=" << format_splitting(*a.splitting, al) << '\n';
        return kYes;
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto sp = std::make_shared<std::string>();
    auto word = std::make_shared<std::string>();
    auto* c = command(app, "elliptic", "is the word elliptic to the splitting?",
                      "yes factor=A|B | no", *alpha);
    c->add_option("splitting", *sp, "split <words> | <words>")->required();
    c->add_option("word", *word)->required();
    c->callback([&s, alpha, sp, word] {
      s.action = [&s, alpha, sp, word] {
        Alphabet al = alpha->get();
        auto f = elliptic_factor(parse_splitting(*sp, al), parse_cyclic_word(*word, al));
        if (!f) {
          s.out << "no\n";
          return kNo;
        }
        s.out << "yes factor=" << (*f == Factor::a ? "A" : "B") << '\n';
        return kYes;
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto s1 = std::make_shared<std::string>();
    auto f1 = std::make_shared<std::string>();
    auto s2 = std::make_shared<std::string>();
    auto f2 = std::make_shared<std::string>();
    auto* c = command(app, "prim-intersect",
                      "primitive element in a factor of each splitting",
                      "<word>", *alpha);
    c->add_option("first", *s1, "split <words> | <words>")->required();
    c->add_option("factor1", *f1, "A or B")->required();
    c->add_option("second", *s2, "split <words> | <words>")->required();
    c->add_option("factor2", *f2, "A or B")->required();
    c->callback([&s, alpha, s1, f1, s2, f2] {
      s.action = [&s, alpha, s1, f1, s2, f2] {
        Alphabet al = alpha->get();
        Word g = primitive_in_intersection(parse_splitting(*s1, al), factor_of(*f1),
                                           parse_splitting(*s2, al), factor_of(*f2));
        s.out << format_word(g, al) << '\n';
        return kYes;
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto s1 = std::make_shared<std::string>();
    auto s2 = std::make_shared<std::string>();
    auto moves = std::make_shared<bool>(false);
    auto* c = command(app, "nielsen-bound",
                      "upper bound on the ellipticity-graph distance of two splittings",
                      "<bound> then, with --moves, one move per line", *alpha);
    c->add_option("first", *s1, "split <words> | <words>")->required();
    c->add_option("second", *s2, "split <words> | <words>")->required();
    c->add_flag("--moves", *moves, "print the recorded Nielsen moves");
    c->callback([&s, alpha, s1, s2, moves] {
      s.action = [&s, alpha, s1, s2, moves] {
        Alphabet al = alpha->get();
        NielsenBound b = nielsen_bound(parse_splitting(*s1, al), parse_splitting(*s2, al));
        s.out << b.bound << '\n';
        if (*moves) {
          for (const NielsenMove& m : b.moves) {
            s.out << format_move(m, al) << '\n';
          }
        }
        return kYes;
      };
    });
  }
  {
    auto alpha = std::make_shared<AlphabetArgs>();
    auto words = std::make_shared<std::vector<std::string>>();
    auto* c = command(app, "nielsen", "elementary Nielsen moves taking X to the given basis",
                      "one move per line (inv <g> | rmul <g> <h>), nothing for X itself",
                      *alpha);
    c->add_option("basis", *words)->required();
    c->callback([&s, alpha, words] {
      s.action = [&s, alpha, words] {
        Alphabet al = alpha->get();
        for (const NielsenMove& m : nielsen_decompose(words_of(*words, al), al)) {
          s.out << format_move(m, al) << '\n';
        }
        return kYes;
      };
    });
  }
}

}  // namespace

RunResult run(const std::vector<std::string>& args, std::string_view stdin_text) {
  RunResult result;
  Session session;
  session.stdin_text = stdin_text;
  std::ostringstream err;

  CLI::App app{"Stallings graphs, Whitehead automorphisms and ellipticity in free groups"};
  app.require_subcommand(1);
  build(app, session);

  std::vector<const char*> argv;
  for (const std::string& a : args) {
    argv.push_back(a.c_str());
  }
  if (argv.empty()) {
    argv.push_back("ellgraph");
  }
  if (argv.size() > 1 && argv[1][0] != '-' && app.get_subcommand_no_throw(argv[1]) == nullptr) {
    std::string names;
    for (const CLI::App* sub : app.get_subcommands({})) {
      names += (names.empty() ? "" : ", ") + sub->get_name();
    }
    result.code = kUsage;
    result.err = "error: unknown command '" + std::string(argv[1]) + "'; expected one of " + names +
                 "\n";
    return result;
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    result.code = session.action ? session.action() : kUsage;
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    int code = app.exit(e, help, err);
    result.code = code == 0 ? kYes : kUsage;
    session.out << help.str();
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    result.code = kUsage;
    session.out.str("");
  }
  result.out = session.out.str();
  result.err = err.str();
  return result;
}

}  // namespace ellgraph::cli
