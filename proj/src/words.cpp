#include "ellgraph/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "ellgraph/error.hpp"

namespace ellgraph {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "parse error";
    case ErrorKind::unknown_symbol: return "unknown symbol";
    case ErrorKind::alphabet_mismatch: return "alphabet mismatch";
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::trivial_word: return "trivial word";
    case ErrorKind::not_a_basis: return "not a basis";
    case ErrorKind::does_not_generate: return "does not generate";
    case ErrorKind::rank_mismatch: return "rank mismatch";
    case ErrorKind::unverified_splitting: return "unverified splitting";
    case ErrorKind::trivial_intersection: return "trivial intersection";
  }
  return "error";
}

// --- Alphabet ---------------------------------------------------------------

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) {
    throw Error(ErrorKind::invalid_argument, "alphabet must contain at least one generator");
  }
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) {
      throw Error(ErrorKind::invalid_argument, "empty generator name");
    }
    if (!seen.insert(s).second) {
      throw Error(ErrorKind::invalid_argument, "duplicate generator '" + s + "'");
    }
  }
}

Alphabet Alphabet::standard(std::size_t rank) {
  std::vector<std::string> symbols;
  symbols.reserve(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    symbols.push_back(rank <= 26 ? std::string(1, static_cast<char>('a' + i))
                                 : "x" + std::to_string(i + 1));
  }
  return Alphabet(std::move(symbols));
}

Alphabet Alphabet::from_chars(std::string_view chars) {
  std::vector<std::string> symbols;
  for (char c : chars) {
    if (std::islower(static_cast<unsigned char>(c)) == 0) {
      throw Error(ErrorKind::invalid_argument,
                  std::string("alphabet symbol '") + c + "' is not a lowercase letter");
    }
    symbols.emplace_back(1, c);
  }
  return Alphabet(std::move(symbols));
}

std::optional<Generator> Alphabet::find(std::string_view name) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), name);
  if (it == symbols_.end()) {
    return std::nullopt;
  }
  return static_cast<Generator>(it - symbols_.begin());
}

bool Alphabet::single_char() const {
  return std::all_of(symbols_.begin(), symbols_.end(), [](const std::string& s) {
    return s.size() == 1 && std::islower(static_cast<unsigned char>(s[0])) != 0;
  });
}

// --- Word -------------------------------------------------------------------

Word::Word(std::span<const Letter> letters) {
  letters_.reserve(letters.size());
  for (Letter l : letters) {
    if (!letters_.empty() && letters_.back() == l.inverse()) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.letters_.push_back(it->inverse());
  }
  return out;
}

std::size_t Word::min_rank() const {
  std::size_t r = 0;
  for (Letter l : letters_) {
    r = std::max(r, l.generator() + 1);
  }
  return r;
}

Word operator*(const Word& u, const Word& v) {
  std::size_t cancel = 0;
  while (cancel < u.size() && cancel < v.size() &&
         u.letters_[u.size() - 1 - cancel] == v.letters_[cancel].inverse()) {
    ++cancel;
  }
  Word out;
  out.letters_.reserve(u.size() + v.size() - 2 * cancel);
  out.letters_.insert(out.letters_.end(), u.letters_.begin(),
                      u.letters_.end() - static_cast<std::ptrdiff_t>(cancel));
  out.letters_.insert(out.letters_.end(),
                      v.letters_.begin() + static_cast<std::ptrdiff_t>(cancel),
                      v.letters_.end());
  return out;
}

Word free_reduce(std::span<const Letter> letters) { return Word(letters); }
Word concat(const Word& u, const Word& v) { return u * v; }
Word invert(const Word& u) { return u.inverse(); }

// --- CyclicWord -------------------------------------------------------------

std::vector<Letter> least_rotation(std::span<const Letter> letters) {
  const std::size_t n = letters.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      Letter a = letters[(r + k) % n];
      Letter b = letters[(best + k) % n];
      if (a != b) {
        if (a < b) {
          best = r;
        }
        break;
      }
    }
  }
  std::vector<Letter> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(letters[(best + k) % n]);
  }
  return out;
}

namespace {

// Bounds [first, last) of the cyclically reduced middle of a reduced word.
std::pair<std::size_t, std::size_t> cyclic_bounds(std::span<const Letter> w) {
  std::size_t i = 0;
  std::size_t j = w.size();
  while (j - i >= 2 && w[i] == w[j - 1].inverse()) {
    ++i;
    --j;
  }
  return {i, j};
}

}  // namespace

CyclicWord::CyclicWord(std::span<const Letter> letters) {
  Word reduced(letters);
  auto [i, j] = cyclic_bounds(reduced.letters());
  letters_ = least_rotation(reduced.letters().subspan(i, j - i));
}

CyclicWord CyclicWord::inverse() const { return CyclicWord(as_word().inverse()); }

std::size_t CyclicWord::min_rank() const { return as_word().min_rank(); }

CyclicReduction cyclic_reduce(const Word& w) {
  auto letters = w.letters();
  auto [i, j] = cyclic_bounds(letters);
  Word prefix(letters.subspan(0, i));
  auto middle = letters.subspan(i, j - i);
  std::vector<Letter> canon = least_rotation(middle);

  // The core may be reached by several rotations when the middle is a proper
  // power; each gives two conjugators (prefix·p or prefix·q⁻¹ for middle = pq).
  std::optional<Word> best;
  const std::size_t n = middle.size();
  for (std::size_t r = 0; r < std::max<std::size_t>(n, 1); ++r) {
    bool match = true;
    for (std::size_t k = 0; k < n && match; ++k) {
      match = middle[(r + k) % n] == canon[k];
    }
    if (!match) {
      continue;
    }
    Word head = prefix * Word(middle.subspan(0, r));
    Word tail = prefix * Word(middle.subspan(r)).inverse();
    for (Word* cand : {&head, &tail}) {
      if (!best || cand->size() < best->size()) {
        best = *cand;
      }
    }
  }
  CyclicReduction out;
  out.core = CyclicWord(Word(canon));
  out.conjugator = best ? *best : prefix;
  return out;
}

std::vector<Generator> letter_support(const Word& w) {
  std::vector<Generator> gens;
  for (Letter l : w.letters()) {
    gens.push_back(l.generator());
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

std::vector<Generator> letter_support(const CyclicWord& w) {
  return letter_support(w.as_word());
}

// --- Text format ------------------------------------------------------------

namespace {

void require_single_char(const Alphabet& alphabet) {
  if (!alphabet.single_char()) {
    throw Error(ErrorKind::invalid_argument,
                "word format needs single lowercase-letter generator names");
  }
}

}  // namespace

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  require_single_char(alphabet);
  if (text == "1") {
    return Word();
  }
  if (text.empty()) {
    throw Error(ErrorKind::parse, "empty word token (write the identity as \"1\")");
  }
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    auto uc = static_cast<unsigned char>(c);
    if (std::isalpha(uc) == 0) {
      throw Error(ErrorKind::parse, std::string("malformed word \"") + std::string(text) +
                                        "\": unexpected character '" + c + "'");
    }
    const bool inverse = std::isupper(uc) != 0;
    const char lower = static_cast<char>(std::tolower(uc));
    auto gen = alphabet.find(std::string_view(&lower, 1));
    if (!gen) {
      throw Error(ErrorKind::unknown_symbol,
                  std::string("unknown symbol '") + c + "' in word \"" + std::string(text) + "\"");
    }
    letters.emplace_back(*gen, inverse ? -1 : 1);
  }
  return Word(letters);
}

CyclicWord parse_cyclic_word(std::string_view text, const Alphabet& alphabet) {
  return CyclicWord(parse_word(text, alphabet));
}

std::string format_word(const Word& w, const Alphabet& alphabet) {
  require_single_char(alphabet);
  if (w.empty()) {
    return "1";
  }
  std::string out;
  out.reserve(w.size());
  for (Letter l : w.letters()) {
    char c = alphabet.symbol(l.generator())[0];
    out.push_back(l.positive() ? c : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

std::string format_word(const CyclicWord& w, const Alphabet& alphabet) {
  return format_word(w.as_word(), alphabet);
}

void check_in_alphabet(std::span<const Letter> letters, std::size_t rank) {
  for (Letter l : letters) {
    if (l.generator() >= rank) {
      throw Error(ErrorKind::alphabet_mismatch,
                  "letter with generator index " + std::to_string(l.generator()) +
                      " outside alphabet of rank " + std::to_string(rank));
    }
  }
}

}  // namespace ellgraph

namespace {

std::size_t hash_letters(std::span<const ellgraph::Letter> letters) {
  std::size_t h = 1469598103934665603ULL;
  for (auto l : letters) {
    h ^= l.code() + 1;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::size_t std::hash<ellgraph::Word>::operator()(const ellgraph::Word& w) const noexcept {
  return hash_letters(w.letters());
}

std::size_t std::hash<ellgraph::CyclicWord>::operator()(
    const ellgraph::CyclicWord& w) const noexcept {
  return hash_letters(w.letters()) * 31 + 7;
}
