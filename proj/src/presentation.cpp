#include "hvase/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace hvase {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         what),
      line_(line),
      column_(column) {}

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

struct Token {
  std::string text;
  int column;
};

// Splits on blanks; columns are 1-based.
std::vector<Token> split_tokens(std::string_view body, int first_column) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] == ' ' || body[i] == '\t' || body[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < body.size() && body[j] != ' ' && body[j] != '\t' && body[j] != '\r') ++j;
    out.push_back({std::string(body.substr(i, j - i)), first_column + static_cast<int>(i)});
    i = j;
  }
  return out;
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  Presentation p;
  std::map<std::string, int> index;
  bool seen_gens = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string_view::npos) {
      if (eol == text.size()) break;
      continue;
    }
    std::size_t colon = line.find(':', start);
    if (colon == std::string_view::npos) {
      throw ParseError("expected 'gens:' or 'rel:'", line_no, static_cast<int>(start) + 1);
    }
    std::string_view keyword = line.substr(start, colon - start);
    while (!keyword.empty() && (keyword.back() == ' ' || keyword.back() == '\t')) keyword.remove_suffix(1);
    auto tokens = split_tokens(line.substr(colon + 1), static_cast<int>(colon) + 2);

    if (keyword == "gens") {
      if (seen_gens) throw ParseError("duplicate 'gens:' line", line_no, static_cast<int>(start) + 1);
      seen_gens = true;
      if (tokens.empty()) throw ParseError("empty generator list", line_no, static_cast<int>(colon) + 2);
      for (const auto& tok : tokens) {
        for (std::size_t k = 0; k < tok.text.size(); ++k) {
          if (!is_name_char(tok.text[k])) {
            throw ParseError("invalid character '" + std::string(1, tok.text[k]) + "' in generator name",
                             line_no, tok.column + static_cast<int>(k));
          }
        }
        if (index.contains(tok.text)) {
          throw ParseError("duplicate generator '" + tok.text + "'", line_no, tok.column);
        }
        p.names.push_back(tok.text);
        index[tok.text] = static_cast<int>(p.names.size());
      }
    } else if (keyword == "rel") {
      if (!seen_gens) throw ParseError("'rel:' before 'gens:'", line_no, static_cast<int>(start) + 1);
      Word w;
      for (const auto& tok : tokens) {
        std::string name = tok.text;
        int sign = 1;
        if (!name.empty() && name.back() == '\'') {
          name.pop_back();
          sign = -1;
        }
        if (name.empty()) throw ParseError("missing generator name", line_no, tok.column);
        for (std::size_t k = 0; k < name.size(); ++k) {
          if (!is_name_char(name[k])) {
            throw ParseError("invalid character '" + std::string(1, name[k]) + "' in relator", line_no,
                             tok.column + static_cast<int>(k));
          }
        }
        auto it = index.find(name);
        if (it == index.end()) throw ParseError("unknown generator '" + name + "'", line_no, tok.column);
        w.push_back({GeneratorId{it->second}, sign});
      }
      p.relators.push_back(std::move(w));
    } else {
      throw ParseError("unknown keyword '" + std::string(keyword) + "'", line_no, static_cast<int>(start) + 1);
    }
    if (eol == text.size()) break;
  }
  if (!seen_gens) throw ParseError("empty generator list (no 'gens:' line)", line_no, 1);
  return p;
}

Presentation free_presentation(int count) {
  Presentation p;
  for (int i = 1; i <= count; ++i) p.names.push_back("g" + std::to_string(i));
  return p;
}

std::vector<std::string> word_tokens(const Word& w, const Presentation& p) {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (const auto& l : w) {
    std::string name = (l.gen.index >= 1 && l.gen.index <= p.generator_count())
                           ? p.names[static_cast<std::size_t>(l.gen.index - 1)]
                           : "g" + std::to_string(l.gen.index);
    if (l.sign < 0) name += '\'';
    out.push_back(std::move(name));
  }
  return out;
}

std::string format_word(const Word& w, const Presentation& p) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& t : word_tokens(w, p)) {
    if (!s.empty()) s += ' ';
    s += t;
  }
  return s;
}

std::string format_presentation(const Presentation& p) {
  std::string s = "<";
  for (std::size_t i = 0; i < p.names.size(); ++i) s += (i ? ", " : "") + p.names[i];
  s += " |";
  for (std::size_t i = 0; i < p.relators.size(); ++i) s += (i ? ", " : " ") + format_word(p.relators[i], p);
  return s + ">";
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const auto& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

IntegerMatrix relator_matrix(const Presentation& p) {
  IntegerMatrix m(p.relators.size(), static_cast<std::size_t>(p.generator_count()));
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    for (const auto& l : p.relators[r]) m(r, static_cast<std::size_t>(l.gen.index - 1)) += l.sign;
  }
  return m;
}

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

std::vector<BigInt> diagonal_of(const IntegerMatrix& m) {
  std::vector<BigInt> d(std::min(m.rows(), m.cols()));
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = abs(m(k, k));
  return d;
}

}  // namespace

std::vector<BigInt> smith_normal_form(IntegerMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t diag = std::min(rows, cols);

  for (std::size_t t = 0; t < diag; ++t) {
    while (true) {
      // Pivot on the smallest nonzero magnitude in the trailing block.
      bool found = false;
      std::size_t pr = t, pc = t;
      BigInt best;
      for (std::size_t r = t; r < rows; ++r) {
        for (std::size_t c = t; c < cols; ++c) {
          if (m(r, c) == 0) continue;
          BigInt a = abs(m(r, c));
          if (!found || a < best) {
            found = true;
            best = a;
            pr = r;
            pc = c;
          }
        }
      }
      if (!found) return diagonal_of(m);
      swap_rows(m, t, pr);
      swap_cols(m, t, pc);

      const BigInt pivot = m(t, t);
      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (m(r, t) == 0) continue;
        BigInt q = m(r, t) / pivot;
        for (std::size_t c = t; c < cols; ++c) m(r, c) -= q * m(t, c);
        if (m(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (m(t, c) == 0) continue;
        BigInt q = m(t, c) / pivot;
        for (std::size_t r = t; r < rows; ++r) m(r, c) -= q * m(r, t);
        if (m(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot row and column are clear; enforce divisibility of the trailing block.
      bool divides = true;
      for (std::size_t r = t + 1; r < rows && divides; ++r) {
        for (std::size_t c = t + 1; c < cols; ++c) {
          if (m(r, c) % pivot != 0) {
            for (std::size_t k = t; k < cols; ++k) m(t, k) += m(r, k);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
  }
  return diagonal_of(m);
}

Homology first_homology(const Presentation& p) {
  auto d = smith_normal_form(relator_matrix(p));
  Homology h;
  int nonzero = 0;
  for (const auto& x : d) {
    if (x != 0) ++nonzero;
    if (x > 1) h.torsion.push_back(x);
  }
  h.free_rank = p.generator_count() - nonzero;
  return h;
}

std::string format_homology(const Homology& h) {
  // Trivial group prints as "0"; the free part is omitted when its rank is 0.
  std::ostringstream os;
  if (h.free_rank > 0) os << "Z^" << h.free_rank;
  for (const auto& t : h.torsion) os << (os.tellp() > 0 ? " + " : "") << "Z/" << t;
  return os.tellp() > 0 ? os.str() : "0";
}

FiniteGroupTable::FiniteGroupTable(std::string name, int order, std::vector<int> table)
    : name_(std::move(name)), order_(order), table_(std::move(table)) {
  if (order_ <= 0 || table_.size() != static_cast<std::size_t>(order_) * static_cast<std::size_t>(order_)) {
    throw std::invalid_argument("group table has inconsistent size");
  }
  for (int e = 0; e < order_ && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < order_ && ok; ++a) ok = product(e, a) == a && product(a, e) == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw std::invalid_argument("group table has no identity");
  inverse_.assign(static_cast<std::size_t>(order_), -1);
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      if (product(a, b) == identity_ && product(b, a) == identity_) {
        inverse_[static_cast<std::size_t>(a)] = b;
        break;
      }
    }
    if (inverse_[static_cast<std::size_t>(a)] < 0) throw std::invalid_argument("group table lacks an inverse");
  }
}

bool FiniteGroupTable::is_group() const {
  for (int v : table_) {
    if (v < 0 || v >= order_) return false;
  }
  for (int a = 0; a < order_; ++a) {
    if (product(a, inverse(a)) != identity_ || product(inverse(a), a) != identity_) return false;
    for (int b = 0; b < order_; ++b) {
      for (int c = 0; c < order_; ++c) {
        if (product(product(a, b), c) != product(a, product(b, c))) return false;
      }
    }
  }
  return true;
}

FiniteGroupTable cyclic_group(int n) {
  std::vector<int> t(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a * n + b)] = (a + b) % n;
  return FiniteGroupTable("Z/" + std::to_string(n), n, std::move(t));
}

FiniteGroupTable symmetric_group(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> elems;
  do {
    elems.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);

  const int order = static_cast<int>(elems.size());
  std::vector<int> t(static_cast<std::size_t>(order * order));
  std::vector<int> comp(static_cast<std::size_t>(n));
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      // (a*b)(x) = a(b(x))
      for (int x = 0; x < n; ++x) {
        comp[static_cast<std::size_t>(x)] =
            elems[static_cast<std::size_t>(a)][static_cast<std::size_t>(elems[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)])];
      }
      t[static_cast<std::size_t>(a * order + b)] = index.at(comp);
    }
  }
  return FiniteGroupTable("S" + std::to_string(n), order, std::move(t));
}

FiniteGroupTable dihedral_group(int n) {
  // Element k + n*e is r^k s^e, with s r = r^-1 s.
  const int order = 2 * n;
  std::vector<int> t(static_cast<std::size_t>(order * order));
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      int k1 = a % n, e1 = a / n, k2 = b % n, e2 = b / n;
      int k = ((k1 + (e1 ? -k2 : k2)) % n + n) % n;
      t[static_cast<std::size_t>(a * order + b)] = k + n * (e1 ^ e2);
    }
  }
  return FiniteGroupTable("D" + std::to_string(n), order, std::move(t));
}

namespace {

int evaluate(const Word& w, const std::vector<int>& assignment, const FiniteGroupTable& g) {
  int acc = g.identity();
  for (const auto& l : w) {
    int x = assignment[static_cast<std::size_t>(l.gen.index - 1)];
    acc = g.product(acc, l.sign > 0 ? x : g.inverse(x));
  }
  return acc;
}

}  // namespace

std::uint64_t count_homomorphisms(const Presentation& p, const FiniteGroupTable& g, std::uint64_t budget) {
  const int n = p.generator_count();
  std::uint64_t tuples = 1;
  for (int i = 0; i < n; ++i) {
    tuples *= static_cast<std::uint64_t>(g.order());
    if (tuples > budget) {
      throw EnumerationBudgetError("homomorphism enumeration into " + g.name() + " needs " +
                                   std::to_string(g.order()) + "^" + std::to_string(n) +
                                   " tuples, budget is " + std::to_string(budget));
    }
  }

  // Relators are checked as soon as their largest generator has been assigned.
  std::vector<std::vector<const Word*>> ready(static_cast<std::size_t>(n) + 1);
  for (const auto& r : p.relators) {
    int top = 0;
    for (const auto& l : r) top = std::max(top, l.gen.index);
    ready[static_cast<std::size_t>(top)].push_back(&r);
  }
  for (const Word* r : ready[0]) {
    if (evaluate(*r, {}, g) != g.identity()) return 0;
  }

  std::vector<int> assignment(static_cast<std::size_t>(n), 0);
  std::uint64_t count = 0;
  auto search = [&](auto&& self, int depth) -> void {
    if (depth == n) {
      ++count;
      return;
    }
    for (int x = 0; x < g.order(); ++x) {
      assignment[static_cast<std::size_t>(depth)] = x;
      bool ok = true;
      for (const Word* r : ready[static_cast<std::size_t>(depth) + 1]) {
        if (evaluate(*r, assignment, g) != g.identity()) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, depth + 1);
    }
  };
  search(search, 0);
  return count;
}

Presentation truncate_presentation(const Presentation& p, std::size_t k) {
  if (k > p.relators.size()) {
    throw std::out_of_range("relator count " + std::to_string(k) + " exceeds " +
                            std::to_string(p.relators.size()));
  }
  Presentation out;
  out.names = p.names;
  out.relators.assign(p.relators.begin(), p.relators.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

Presentation restrict_generators(const Presentation& p, int count) {
  if (count < 0 || count > p.generator_count()) {
    throw std::invalid_argument("generator count " + std::to_string(count) + " out of range");
  }
  Presentation out;
  out.names.assign(p.names.begin(), p.names.begin() + count);
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    for (const auto& l : p.relators[r]) {
      if (l.gen.index > count) {
        throw std::invalid_argument("relator " + std::to_string(r + 1) + " uses generator '" +
                                    p.names[static_cast<std::size_t>(l.gen.index - 1)] +
                                    "' beyond the first " + std::to_string(count));
      }
    }
    out.relators.push_back(p.relators[r]);
  }
  return out;
}

}  // namespace hvase
