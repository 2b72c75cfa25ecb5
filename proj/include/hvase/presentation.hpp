#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hvase {

using BigInt = boost::multiprecision::cpp_int;

/// 1-based generator index; generator i is realized by vase i.
struct GeneratorId {
  int index = 1;

  friend auto operator<=>(const GeneratorId&, const GeneratorId&) = default;
};

struct Letter {
  GeneratorId gen;
  int sign = 1;  // +1 or -1

  Letter inverse() const { return {gen, -sign}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

struct Presentation {
  std::vector<std::string> names;  // names[i-1] names generator i
  std::vector<Word> relators;

  int generator_count() const { return static_cast<int>(names.size()); }

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses the `gens:` / `rel:` text format. Throws ParseError.
Presentation parse_presentation(std::string_view text);

/// Free presentation on `count` generators named g1..gN.
Presentation free_presentation(int count);

/// Tokens such as "a", "b'" for display and serialization.
std::vector<std::string> word_tokens(const Word& w, const Presentation& p);
std::string format_word(const Word& w, const Presentation& p);
std::string format_presentation(const Presentation& p);

Word free_reduce(const Word& w);
Word inverse(const Word& w);

/// Dense matrix of exact integers, row-major.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Rows are relators, columns generators, entries exponent sums.
IntegerMatrix relator_matrix(const Presentation& p);

/// Diagonal of the Smith normal form, min(rows, cols) non-negative entries with
/// d1 | d2 | ... (zeros trail).
std::vector<BigInt> smith_normal_form(IntegerMatrix m);

struct Homology {
  int free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1

  friend bool operator==(const Homology&, const Homology&) = default;
};

Homology first_homology(const Presentation& p);
std::string format_homology(const Homology& h);

/// Finite group given by its Cayley table over element indices 0..order-1.
class FiniteGroupTable {
 public:
  FiniteGroupTable(std::string name, int order, std::vector<int> table);

  const std::string& name() const { return name_; }
  int order() const { return order_; }
  int identity() const { return identity_; }
  int product(int a, int b) const { return table_[static_cast<std::size_t>(a * order_ + b)]; }
  int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }

  /// Full associativity / identity / inverse audit, O(n^3).
  bool is_group() const;

 private:
  std::string name_;
  int order_;
  std::vector<int> table_;
  int identity_ = -1;
  std::vector<int> inverse_;
};

FiniteGroupTable cyclic_group(int n);
FiniteGroupTable symmetric_group(int n);
/// Symmetries of the regular n-gon, order 2n (dihedral_group(4) is D4 of order 8).
FiniteGroupTable dihedral_group(int n);

class EnumerationBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultHomBudget = 10'000'000;

/// Number of generator assignments into `g` that satisfy every relator.
std::uint64_t count_homomorphisms(const Presentation& p, const FiniteGroupTable& g,
                                  std::uint64_t budget = kDefaultHomBudget);

/// Same generators, first k relators.
Presentation truncate_presentation(const Presentation& p, std::size_t k);

/// First `count` generators; throws std::invalid_argument if a relator uses a dropped one.
Presentation restrict_generators(const Presentation& p, int count);

}  // namespace hvase
