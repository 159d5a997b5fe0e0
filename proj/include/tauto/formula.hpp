#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace tauto {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Bit t of a falsity mask is set iff the assignment with integer code t
// makes the formula false. Assignment code: bit i set iff x_i is true.
using Mask = std::uint64_t;
using Assignment = std::uint32_t;

/// Immutable AST node of a well-formed formula over x0..x_{m-1}, ~ and ->.
class Formula {
public:
    enum class Kind { Var, Neg, Impl };

    static FormulaPtr var(int index);
    static FormulaPtr neg(FormulaPtr child);
    static FormulaPtr impl(FormulaPtr lhs, FormulaPtr rhs);

    Kind kind() const { return kind_; }
    int var_index() const { return var_; }
    const FormulaPtr& child() const { return lhs_; }
    const FormulaPtr& lhs() const { return lhs_; }
    const FormulaPtr& rhs() const { return rhs_; }
    int length() const { return length_; }

private:
    Formula(Kind k, int v, FormulaPtr l, FormulaPtr r, int len)
        : kind_(k), var_(v), lhs_(std::move(l)), rhs_(std::move(r)), length_(len) {}
    Kind kind_;
    int var_;
    FormulaPtr lhs_, rhs_;
    int length_;
};

bool equal(const Formula& a, const Formula& b);
inline bool equal(const FormulaPtr& a, const FormulaPtr& b) { return equal(*a, *b); }

/// Largest variable index occurring in the formula.
int max_var_index(const Formula& f);

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), pos(position) {}
    std::size_t pos;
};

// Surface syntax: x<k>, ~, ->, with [ ] or ( ) brackets. Implication
// brackets are mandatory except at the outermost level; canonical output
// uses [ ].
FormulaPtr parse_formula(const std::string& text, int m);
std::string render_formula(const Formula& f);
inline std::string render_formula(const FormulaPtr& f) { return render_formula(*f); }

bool eval(const Formula& f, Assignment t);
Mask var_falsity_mask(int index, int m);
Mask full_mask(int m);
Mask falsity_mask(const Formula& f, int m);
inline bool is_tautology(const Formula& f, int m) { return falsity_mask(f, m) == 0; }
inline bool is_antilogy(const Formula& f, int m) { return falsity_mask(f, m) == full_mask(m); }

/// x0 -> x1 under {0<->1} becomes x1 -> x0; the falsity set is permuted
/// assignment-wise.
FormulaPtr permute_vars(const Formula& f, const std::vector<int>& sigma);
Mask permute_assignments(Mask mask, const std::vector<int>& sigma, int m);

/// Canonical representative under variable renaming: each first occurrence
/// (left to right) takes the smallest unused index. Idempotent.
FormulaPtr type_of(const Formula& f);
bool is_type_formula(const Formula& f);

/// Index of the rightmost variable occurrence.
int rightmost_var(const Formula& f);

struct NormStats {
    int distinct_vars = 0;  // ||phi||
    int length = 0;         // l(phi)
    int repeats = 0;        // R: occurrences that are not first occurrences
    int negations = 0;      // N
    int norm_times_two = 0; // 2*|phi| = 2*||phi|| - l(phi) = 1 - 2R - N
};
NormStats norm_stats(const Formula& f);

// Maximal premise-chain decomposition phi = p1 -> (p2 -> ... (pk -> head))
// with head not an implication.
struct PremiseChain {
    std::vector<FormulaPtr> premises;
    FormulaPtr head;
};
PremiseChain premise_chain(const FormulaPtr& f);

struct SimpleKinds {
    bool first_kind = false;
    bool strict_first_kind = false;
    bool second_kind = false;
    bool any() const { return first_kind || second_kind; }
};
/// Simple-tautology shapes: first kind (some premise equals the variable
/// head), strict first kind (the first premise and no later one), second
/// kind (two premises p and ~p with a non-implication head).
SimpleKinds classify_simple(const FormulaPtr& f);

inline bool is_simple_first_kind(const FormulaPtr& f) { return classify_simple(f).first_kind; }
inline bool is_strict_first_kind(const FormulaPtr& f) { return classify_simple(f).strict_first_kind; }
inline bool is_simple_tautology(const FormulaPtr& f) { return classify_simple(f).any(); }

enum class Category { Taut, Unknown, Anti };
enum class Strength { Strong, Weak };

/// Recursive T/U/A labelling relative to a seed set of tautologies,
/// following the strong or weak table. Memoizes by node so repeated
/// subtrees from the enumerator classify in linear time.
class CategoryClassifier {
public:
    CategoryClassifier(std::function<bool(const FormulaPtr&)> basis_test, Strength strength)
        : basis_(std::move(basis_test)), strength_(strength) {}
    Category classify(const FormulaPtr& f);

private:
    std::function<bool(const FormulaPtr&)> basis_;
    Strength strength_;
    std::unordered_map<const Formula*, Category> memo_;
};

// Per-formula basis membership tests for the seed sets used in the count
// recursions. The strong basis of S1 is the strict first kind; the weak
// ones are characterized structurally with category subtests.
bool is_weak_s1_basic(const FormulaPtr& f);
bool is_combined_basic(const FormulaPtr& f);

/// Streams every well-formed formula of a given length exactly once,
/// memoizing shorter lengths; subtrees are shared.
class FormulaEnumerator {
public:
    explicit FormulaEnumerator(int m);
    const std::vector<FormulaPtr>& of_length(int n);
    /// Number of formulas of length n (equals the coefficient of the
    /// all-formulae series).
    std::size_t count(int n) { return of_length(n).size(); }

private:
    int m_;
    std::vector<std::vector<FormulaPtr>> by_length_;
};

}  // namespace tauto
