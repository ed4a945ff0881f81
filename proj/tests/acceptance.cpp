// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "ellgraph/cli.hpp"
#include "helpers.hpp"

using namespace testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

Outcome fail(std::string note) { return {false, std::move(note)}; }

// 1. spanning-tree basis rebuilds the same based graph
Outcome round_trip() {
  std::mt19937 rng(1001);
  std::uniform_int_distribution<std::size_t> count(1, 3);
  for (int i = 0; i < 200; ++i) {
    std::size_t rank = 2 + i % 2;
    Subgroup h = build_subgroup(random_gens(rng, rank, count(rng), 5), rank);
    Subgroup back = build_subgroup(spanning_tree_basis(h), rank);
    if (!based_isomorphic(h.graph(), back.graph())) {
      return fail("subgroup " + std::to_string(i));
    }
  }
  return {true, "200 subgroups"};
}

// 2. membership in H ∩ K agrees with membership in both
Outcome intersections() {
  std::mt19937 rng(1002);
  std::uniform_int_distribution<std::size_t> count(1, 3);
  auto words = oracle::reduced_words(2, 6);
  for (int i = 0; i < 100; ++i) {
    Subgroup h = build_subgroup(random_gens(rng, 2, count(rng), 5), 2);
    Subgroup k = build_subgroup(random_gens(rng, 2, count(rng), 5), 2);
    Subgroup hk = intersect(h, k);
    for (const auto& raw : words) {
      Word w = oracle::to_word(raw);
      if (contains(hk, w) != (contains(h, w) && contains(k, w))) {
        return fail("pair " + std::to_string(i));
      }
    }
  }
  return {true, "100 pairs x " + std::to_string(words.size()) + " words"};
}

// 3. a subgroup is conjugate to its conjugates, fixed negatives are not
Outcome conjugacy() {
  std::mt19937 rng(1003);
  std::uniform_int_distribution<std::size_t> count(1, 3);
  for (int i = 0; i < 100; ++i) {
    std::size_t rank = 2 + i % 2;
    auto gens = random_gens(rng, rank, count(rng), 5);
    Word x = random_word(rng, rank, 3);
    std::vector<Word> moved;
    for (const Word& g : gens) {
      moved.push_back(x * g * x.inverse());
    }
    if (!conjugate_subgroups(build_subgroup(gens, rank), build_subgroup(moved, rank))) {
      return fail("case " + std::to_string(i));
    }
  }
  if (conjugate_subgroups(H("a"), H("b")) || conjugate_subgroups(H("a"), H("aa"))) {
    return fail("negative case answered true");
  }
  return {true, "100 positives, 2 negatives"};
}

// 4. a multiplier outside the support fixes w or lengthens it
Outcome badmult() {
  auto auts = enumerate_whitehead(3);
  std::size_t checked = 0;
  for (const auto& raw : oracle::cyclic_words(3, 4)) {
    CyclicWord w = oracle::to_cyclic(raw);
    auto support = letter_support(w);
    for (const WhiteheadAut& t : auts) {
      Generator m = t.multiplier_letter().generator();
      if (std::binary_search(support.begin(), support.end(), m)) {
        continue;
      }
      CyclicWord img = t.apply(w);
      ++checked;
      if (!(img == w || img.size() > w.size())) {
        return fail("exception at " + str(w, 3));
      }
    }
  }
  return {true, std::to_string(checked) + " (word, automorphism) pairs"};
}

bool certificate_holds(const FreeSplitting& s1, const FreeSplitting& s2,
                       const EllipticityAnswer& ans) {
  if (!ans.certificate) {
    return false;
  }
  const CommonElliptic& c = *ans.certificate;
  return !c.element.empty() &&
         contains(s1.factor(c.first), c.conj_first * c.element * c.conj_first.inverse()) &&
         contains(s2.factor(c.second), c.conj_second * c.element * c.conj_second.inverse());
}

// 5. fixed splitting pairs; the negative is confirmed by brute force
Outcome splitting_pairs() {
  struct Case {
    const char* s1;
    const char* s2;
    std::size_t rank;
    bool yes;
  };
  const Case cases[] = {{"split a | b", "split ab | b", 2, true},
                        {"split a b | c", "split b c | a", 3, true},
                        {"split a | b", "split aab | ab", 2, false}};
  for (const Case& c : cases) {
    FreeSplitting s1 = S(c.s1, c.rank);
    FreeSplitting s2 = S(c.s2, c.rank);
    auto ans = splittings_distance_two(s1, s2);
    if (ans.decision != c.yes) {
      return fail(std::string(c.s1) + " vs " + c.s2);
    }
    if (c.yes && !certificate_holds(s1, s2, ans)) {
      return fail(std::string("witness for ") + c.s2 + " does not verify");
    }
  }
  // every factor element x·u·x⁻¹ with |x| ≤ 4, u a product of ≤ 4 basis letters
  std::set<oracle::Raw> left;
  std::set<oracle::Raw> right;
  for (const char* f : {"a", "b"}) {
    auto e = oracle::conjugate_elements({oracle::from_word(W(f))}, 2, 4, 4, 12);
    left.insert(e.begin(), e.end());
  }
  for (const char* f : {"aab", "ab"}) {
    auto e = oracle::conjugate_elements({oracle::from_word(W(f))}, 2, 4, 4, 12);
    right.insert(e.begin(), e.end());
  }
  for (const auto& e : left) {
    if (!e.empty() && right.count(e) != 0) {
      return fail("brute force finds a common elliptic element");
    }
  }
  return {true, "3 cases; brute force over " + std::to_string(left.size() + right.size()) +
                    " elements agrees"};
}

// 6. minimize-and-classify agrees with breadth-first search for a good pair
Outcome word_pairs() {
  auto words = oracle::cyclic_words(2, 5);
  std::size_t checked = 0;
  for (const auto& rv : words) {
    for (const auto& rw : words) {
      if (rv.size() + rw.size() > 6) {
        continue;
      }
      ++checked;
      bool lib = words_distance_two(oracle::to_cyclic(rv), oracle::to_cyclic(rw), 2).decision;
      if (lib != oracle::good_pair_reachable(rv, rw, 2)) {
        return fail("disagreement at " + str(oracle::to_cyclic(rv)) + ", " +
                    str(oracle::to_cyclic(rw)));
      }
    }
  }
  return {true, std::to_string(checked) + " pairs"};
}

// 7. primitive element in each nontrivial factor intersection
Outcome primitive_extraction() {
  auto splittings = enumerate_splittings(3, 2);
  std::size_t checked = 0;
  for (const FreeSplitting& s1 : splittings) {
    for (const FreeSplitting& s2 : splittings) {
      for (Factor f1 : {Factor::a, Factor::b}) {
        for (Factor f2 : {Factor::a, Factor::b}) {
          if (spanning_tree_basis(intersect(s1.factor(f1), s2.factor(f2))).empty()) {
            continue;
          }
          ++checked;
          Word g = primitive_in_intersection(s1, f1, s2, f2);
          if (!is_primitive(g, 3) || !oracle::primitive(oracle::from_word(g), 3) ||
              !contains(s1.factor(f1), g) || !contains(s2.factor(f2), g)) {
            return fail("bad element " + str(g, 3));
          }
        }
      }
    }
  }
  return {true, std::to_string(splittings.size()) + " splittings, " + std::to_string(checked) +
                    " intersecting factor pairs"};
}

// 8. bound from the recorded decomposition
Outcome nielsen_bounds() {
  FreeSplitting a_b = S("split a | b");
  if (nielsen_bound(a_b, S("split ab | b")).bound != 2 || nielsen_bound(a_b, a_b).bound != 0) {
    return fail("fixed examples");
  }
  std::mt19937 rng(1008);
  for (int i = 0; i < 50; ++i) {
    std::size_t rank = 2 + i % 2;
    std::size_t k = 1 + i % 4;
    std::uniform_int_distribution<Generator> gen(0, rank - 1);
    std::vector<NielsenMove> moves;
    while (moves.size() < k) {
      Generator x = gen(rng);
      Generator y = gen(rng);
      moves.push_back(x == y ? NielsenMove::invert(x) : NielsenMove::right_multiply(x, y));
    }
    std::vector<Word> y = apply_moves(moves, rank);
    FreeSplitting target =
        verify_splitting({y.front()}, std::vector<Word>(y.begin() + 1, y.end()), rank);
    FreeSplitting standard = rank == 2 ? a_b : S("split a | b c", 3);
    if (nielsen_bound(standard, target).bound > 2 * k) {
      return fail("bound exceeds 2k for case " + std::to_string(i));
    }
  }
  return {true, "2 fixed, 50 random"};
}

std::vector<std::string> split_args(const std::string& line) {
  std::vector<std::string> out{"ellgraph"};
  std::string cur;
  bool quoted = false;
  bool any = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
      any = true;
    } else if (ch == ' ' && !quoted) {
      if (any) {
        out.push_back(cur);
      }
      cur.clear();
      any = false;
    } else {
      cur += ch;
      any = true;
    }
  }
  if (any) {
    out.push_back(cur);
  }
  return out;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) {
    s.replace(p, from.size(), to);
  }
  return s;
}

// 9. golden cases give byte-identical output twice in a row
Outcome cli_determinism() {
  const std::string dir = ELLGRAPH_GOLDEN_DIR;
  std::ifstream in(dir + "/cases.txt");
  if (!in) {
    return fail("cannot open cases.txt");
  }
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.front() != '#') {
      lines.push_back(replace_all(line, "@DIR@", dir));
    }
  }
  auto transcript = [&] {
    std::string t;
    for (const std::string& line : lines) {
      auto r = cli::run(split_args(line), {});
      t += "$ " + line + "\n" + r.out + r.err + "[exit " + std::to_string(r.code) + "]\n";
    }
    return t;
  };
  std::string first = transcript();
  if (first != transcript()) {
    return fail("runs differ");
  }
  return {true, std::to_string(lines.size()) + " cases"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion all[] = {
      {"stallings round trip", round_trip},
      {"intersection oracle", intersections},
      {"conjugacy oracle", conjugacy},
      {"badmult sweep", badmult},
      {"distance-two splittings", splitting_pairs},
      {"distance-two words", word_pairs},
      {"primitive extraction", primitive_extraction},
      {"nielsen bound", nielsen_bounds},
      {"cli determinism", cli_determinism},
  };
  int failures = 0;
  int index = 1;
  for (const Criterion& c : all) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %d %-24s %7.2fs  %s\n", o.ok ? "PASS" : "FAIL", index++, c.name, secs,
                o.note.c_str());
    std::fflush(stdout);
    failures += o.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
