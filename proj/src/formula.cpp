#include "tauto/formula.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace tauto {

FormulaPtr Formula::var(int index) {
    if (index < 0) throw std::invalid_argument("negative variable index");
    return FormulaPtr(new Formula(Kind::Var, index, nullptr, nullptr, 1));
}

FormulaPtr Formula::neg(FormulaPtr child) {
    int len = child->length() + 1;
    return FormulaPtr(new Formula(Kind::Neg, -1, std::move(child), nullptr, len));
}

FormulaPtr Formula::impl(FormulaPtr lhs, FormulaPtr rhs) {
    int len = lhs->length() + rhs->length() + 1;
    return FormulaPtr(new Formula(Kind::Impl, -1, std::move(lhs), std::move(rhs), len));
}

bool equal(const Formula& a, const Formula& b) {
    if (&a == &b) return true;
    if (a.kind() != b.kind() || a.length() != b.length()) return false;
    switch (a.kind()) {
        case Formula::Kind::Var: return a.var_index() == b.var_index();
        case Formula::Kind::Neg: return equal(*a.child(), *b.child());
        case Formula::Kind::Impl:
            return equal(*a.lhs(), *b.lhs()) && equal(*a.rhs(), *b.rhs());
    }
    return false;
}

int max_var_index(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Var: return f.var_index();
        case Formula::Kind::Neg: return max_var_index(*f.child());
        case Formula::Kind::Impl:
            return std::max(max_var_index(*f.lhs()), max_var_index(*f.rhs()));
    }
    return -1;
}

// ---------------------------------------------------------------------------
// parsing / rendering

namespace {

class Parser {
public:
    Parser(const std::string& text, int m) : s_(text), m_(m) {}

    FormulaPtr parse() {
        FormulaPtr f = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("trailing input", pos_);
        return f;
    }

private:
    // expr := atom | atom '->' atom      (inner implications must be bracketed)
    FormulaPtr parse_expr() {
        FormulaPtr lhs = parse_atom();
        skip_ws();
        if (peek() == '-') {
            expect_arrow();
            FormulaPtr rhs = parse_atom();
            skip_ws();
            if (peek() == '-')
                throw ParseError("unbracketed nested implication", pos_);
            return Formula::impl(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    FormulaPtr parse_atom() {
        skip_ws();
        char c = peek();
        if (c == '~') {
            ++pos_;
            return Formula::neg(parse_atom());
        }
        if (c == '[' || c == '(') {
            char close = c == '[' ? ']' : ')';
            std::size_t open_pos = pos_;
            ++pos_;
            FormulaPtr inner = parse_expr();
            skip_ws();
            if (peek() != close)
                throw ParseError(std::string("expected '") + close + "' for bracket", open_pos);
            ++pos_;
            return inner;
        }
        if (c == 'x') {
            ++pos_;
            if (!isdigit(peek())) throw ParseError("expected variable index after 'x'", pos_);
            long idx = 0;
            while (isdigit(peek())) {
                idx = idx * 10 + (peek() - '0');
                if (idx > 1000000) throw ParseError("variable index out of range", pos_);
                ++pos_;
            }
            if (idx >= m_)
                throw ParseError("variable index " + std::to_string(idx) +
                                     " exceeds variable count " + std::to_string(m_),
                                 pos_);
            return Formula::var(static_cast<int>(idx));
        }
        throw ParseError("unexpected character", pos_);
    }

    void expect_arrow() {
        if (pos_ + 1 >= s_.size() || s_[pos_] != '-' || s_[pos_ + 1] != '>')
            throw ParseError("expected '->'", pos_);
        pos_ += 2;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    const std::string& s_;
    int m_;
    std::size_t pos_ = 0;
};

void render_rec(const Formula& f, std::string& out, bool outermost) {
    switch (f.kind()) {
        case Formula::Kind::Var:
            out += 'x';
            out += std::to_string(f.var_index());
            break;
        case Formula::Kind::Neg:
            out += '~';
            render_rec(*f.child(), out, false);
            break;
        case Formula::Kind::Impl:
            if (!outermost) out += '[';
            render_rec(*f.lhs(), out, false);
            out += "->";
            render_rec(*f.rhs(), out, false);
            if (!outermost) out += ']';
            break;
    }
}

}  // namespace

FormulaPtr parse_formula(const std::string& text, int m) {
    if (m < 1) throw std::invalid_argument("variable count must be >= 1");
    return Parser(text, m).parse();
}

std::string render_formula(const Formula& f) {
    std::string out;
    render_rec(f, out, true);
    return out;
}

// ---------------------------------------------------------------------------
// valuation and falsity sets

bool eval(const Formula& f, Assignment t) {
    switch (f.kind()) {
        case Formula::Kind::Var: return (t >> f.var_index()) & 1u;
        case Formula::Kind::Neg: return !eval(*f.child(), t);
        case Formula::Kind::Impl: return !(eval(*f.lhs(), t) && !eval(*f.rhs(), t));
    }
    return false;
}

Mask full_mask(int m) {
    if (m < 1 || m > 6) throw std::invalid_argument("falsity masks support 1 <= m <= 6");
    int bits = 1 << m;
    return bits == 64 ? ~Mask{0} : ((Mask{1} << bits) - 1);
}

Mask var_falsity_mask(int index, int m) {
    Mask mask = 0;
    for (Assignment t = 0; t < (1u << m); ++t)
        if (!((t >> index) & 1u)) mask |= Mask{1} << t;
    return mask;
}

Mask falsity_mask(const Formula& f, int m) {
    const Mask full = full_mask(m);
    switch (f.kind()) {
        case Formula::Kind::Var: {
            int i = f.var_index();
            if (i >= m) throw std::invalid_argument("variable index exceeds variable count");
            return var_falsity_mask(i, m);
        }
        case Formula::Kind::Neg:
            return full ^ falsity_mask(*f.child(), m);
        case Formula::Kind::Impl:
            return falsity_mask(*f.rhs(), m) & ~falsity_mask(*f.lhs(), m) & full;
    }
    return 0;
}

FormulaPtr permute_vars(const Formula& f, const std::vector<int>& sigma) {
    auto map = [&sigma](int i) { return i < static_cast<int>(sigma.size()) ? sigma[i] : i; };
    switch (f.kind()) {
        case Formula::Kind::Var: return Formula::var(map(f.var_index()));
        case Formula::Kind::Neg: return Formula::neg(permute_vars(*f.child(), sigma));
        case Formula::Kind::Impl:
            return Formula::impl(permute_vars(*f.lhs(), sigma), permute_vars(*f.rhs(), sigma));
    }
    return nullptr;
}

Mask permute_assignments(Mask mask, const std::vector<int>& sigma, int m) {
    auto map = [&sigma](int i) { return i < static_cast<int>(sigma.size()) ? sigma[i] : i; };
    Mask out = 0;
    for (Assignment t = 0; t < (1u << m); ++t) {
        if (!((mask >> t) & 1u)) continue;
        Assignment tt = 0;
        for (int i = 0; i < m; ++i)
            if ((t >> i) & 1u) tt |= 1u << map(i);
        out |= Mask{1} << tt;
    }
    return out;
}

// ---------------------------------------------------------------------------
// types and norms

namespace {

FormulaPtr retype(const Formula& f, std::unordered_map<int, int>& rename) {
    switch (f.kind()) {
        case Formula::Kind::Var: {
            auto [it, inserted] = rename.try_emplace(f.var_index(), static_cast<int>(rename.size()));
            return Formula::var(it->second);
        }
        case Formula::Kind::Neg:
            return Formula::neg(retype(*f.child(), rename));
        case Formula::Kind::Impl: {
            FormulaPtr l = retype(*f.lhs(), rename);
            FormulaPtr r = retype(*f.rhs(), rename);
            return Formula::impl(std::move(l), std::move(r));
        }
    }
    return nullptr;
}

bool type_check(const Formula& f, int& next) {
    switch (f.kind()) {
        case Formula::Kind::Var: {
            int i = f.var_index();
            if (i > next) return false;
            if (i == next) ++next;
            return true;
        }
        case Formula::Kind::Neg: return type_check(*f.child(), next);
        case Formula::Kind::Impl:
            return type_check(*f.lhs(), next) && type_check(*f.rhs(), next);
    }
    return false;
}

void count_stats(const Formula& f, std::vector<bool>& seen, NormStats& st) {
    switch (f.kind()) {
        case Formula::Kind::Var: {
            int i = f.var_index();
            if (i >= static_cast<int>(seen.size())) seen.resize(i + 1, false);
            if (seen[i]) ++st.repeats;
            else { seen[i] = true; ++st.distinct_vars; }
            break;
        }
        case Formula::Kind::Neg:
            ++st.negations;
            count_stats(*f.child(), seen, st);
            break;
        case Formula::Kind::Impl:
            count_stats(*f.lhs(), seen, st);
            count_stats(*f.rhs(), seen, st);
            break;
    }
}

}  // namespace

FormulaPtr type_of(const Formula& f) {
    std::unordered_map<int, int> rename;
    return retype(f, rename);
}

bool is_type_formula(const Formula& f) {
    int next = 0;
    return type_check(f, next);
}

int rightmost_var(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Var: return f.var_index();
        case Formula::Kind::Neg: return rightmost_var(*f.child());
        case Formula::Kind::Impl: return rightmost_var(*f.rhs());
    }
    return -1;
}

NormStats norm_stats(const Formula& f) {
    NormStats st;
    st.length = f.length();
    std::vector<bool> seen;
    count_stats(f, seen, st);
    st.norm_times_two = 2 * st.distinct_vars - st.length;
    assert(st.norm_times_two == 1 - 2 * st.repeats - st.negations);
    return st;
}

// ---------------------------------------------------------------------------
// simple tautologies and categories

PremiseChain premise_chain(const FormulaPtr& f) {
    PremiseChain chain;
    FormulaPtr cur = f;
    while (cur->kind() == Formula::Kind::Impl) {
        chain.premises.push_back(cur->lhs());
        cur = cur->rhs();
    }
    chain.head = cur;
    return chain;
}

SimpleKinds classify_simple(const FormulaPtr& f) {
    SimpleKinds kinds;
    PremiseChain chain = premise_chain(f);
    if (chain.premises.empty()) return kinds;

    if (chain.head->kind() == Formula::Kind::Var) {
        int p = chain.head->var_index();
        auto is_p = [p](const FormulaPtr& g) {
            return g->kind() == Formula::Kind::Var && g->var_index() == p;
        };
        bool some_p = std::any_of(chain.premises.begin(), chain.premises.end(), is_p);
        kinds.first_kind = some_p;
        kinds.strict_first_kind =
            is_p(chain.premises.front()) &&
            std::none_of(chain.premises.begin() + 1, chain.premises.end(), is_p);
    }
    // second kind: premises contain some p and ~p; head is already a
    // non-implication by the maximal decomposition
    for (const auto& prem : chain.premises) {
        if (prem->kind() != Formula::Kind::Var) continue;
        int p = prem->var_index();
        for (const auto& other : chain.premises) {
            if (other->kind() == Formula::Kind::Neg &&
                other->child()->kind() == Formula::Kind::Var &&
                other->child()->var_index() == p) {
                kinds.second_kind = true;
                break;
            }
        }
        if (kinds.second_kind) break;
    }
    return kinds;
}

Category CategoryClassifier::classify(const FormulaPtr& f) {
    auto it = memo_.find(f.get());
    if (it != memo_.end()) return it->second;

    Category result;
    if (basis_(f)) {
        result = Category::Taut;
    } else {
        switch (f->kind()) {
            case Formula::Kind::Var:
                result = Category::Unknown;
                break;
            case Formula::Kind::Neg: {
                Category c = classify(f->child());
                result = c == Category::Taut   ? Category::Anti
                         : c == Category::Anti ? Category::Taut
                                               : Category::Unknown;
                break;
            }
            case Formula::Kind::Impl: {
                Category l = classify(f->lhs());
                Category r = classify(f->rhs());
                if (r == Category::Taut) {
                    result = Category::Taut;
                } else if (strength_ == Strength::Weak && l == Category::Anti) {
                    result = Category::Taut;
                } else if (r == Category::Anti) {
                    result = l == Category::Taut ? Category::Anti : Category::Unknown;
                } else {
                    result = Category::Unknown;
                }
                break;
            }
            default:
                result = Category::Unknown;
        }
    }
    memo_.emplace(f.get(), result);
    return result;
}

bool is_weak_s1_basic(const FormulaPtr& f) {
    // p, psi_2, ..., psi_k |-> p with no later premise equal to p and no
    // premise a weak S1-antilogy.
    PremiseChain chain = premise_chain(f);
    if (chain.premises.empty() || chain.head->kind() != Formula::Kind::Var) return false;
    int p = chain.head->var_index();
    const FormulaPtr& first = chain.premises.front();
    if (first->kind() != Formula::Kind::Var || first->var_index() != p) return false;
    CategoryClassifier weak_s1(is_simple_first_kind, Strength::Weak);
    for (std::size_t i = 1; i < chain.premises.size(); ++i) {
        const FormulaPtr& prem = chain.premises[i];
        if (prem->kind() == Formula::Kind::Var && prem->var_index() == p) return false;
        if (weak_s1.classify(prem) == Category::Anti) return false;
    }
    return true;
}

bool is_combined_basic(const FormulaPtr& f) {
    PremiseChain chain = premise_chain(f);
    if (chain.premises.empty()) return false;
    const FormulaPtr& head = chain.head;
    CategoryClassifier cat(is_simple_tautology, Strength::Weak);
    auto is_anti = [&cat](const FormulaPtr& g) { return cat.classify(g) == Category::Anti; };
    auto var_of = [](const FormulaPtr& g) {
        return g->kind() == Formula::Kind::Var ? g->var_index() : -1;
    };
    auto neg_var_of = [](const FormulaPtr& g) {
        return g->kind() == Formula::Kind::Neg && g->child()->kind() == Formula::Kind::Var
                   ? g->child()->var_index()
                   : -1;
    };

    // first shape: p, ..., p with interior premises neither p nor antilogies
    if (head->kind() == Formula::Kind::Var && chain.premises.size() >= 1) {
        int p = head->var_index();
        if (var_of(chain.premises.front()) == p) {
            bool ok = true;
            for (std::size_t j = 1; j < chain.premises.size(); ++j) {
                const FormulaPtr& prem = chain.premises[j];
                if (var_of(prem) == p || is_anti(prem)) { ok = false; break; }
            }
            if (ok) return true;
        }
    }
    // head restrictions shared by the two negation shapes
    bool head_ok = head->kind() == Formula::Kind::Var ||
                   (head->kind() == Formula::Kind::Neg && !is_anti(head->child()));
    if (!head_ok || chain.premises.size() < 2) return false;

    // second shape: p first, ~p somewhere later
    {
        int p = var_of(chain.premises.front());
        if (p >= 0 && var_of(head) != p) {
            bool has_negp = false;
            bool interior_ok = true;
            for (std::size_t j = 1; j < chain.premises.size(); ++j) {
                const FormulaPtr& prem = chain.premises[j];
                if (neg_var_of(prem) == p) has_negp = true;
                if (var_of(prem) == p || is_anti(prem)) { interior_ok = false; break; }
            }
            if (has_negp && interior_ok) return true;
        }
    }
    // third shape: ~p first, p somewhere later
    {
        int p = neg_var_of(chain.premises.front());
        if (p >= 0 && var_of(head) != p) {
            bool has_p = false;
            bool interior_ok = true;
            for (std::size_t j = 1; j < chain.premises.size(); ++j) {
                const FormulaPtr& prem = chain.premises[j];
                if (var_of(prem) == p) has_p = true;
                if (neg_var_of(prem) == p || is_anti(prem)) { interior_ok = false; break; }
            }
            if (has_p && interior_ok) return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// enumeration

FormulaEnumerator::FormulaEnumerator(int m) : m_(m) {
    if (m < 1) throw std::invalid_argument("variable count must be >= 1");
    by_length_.resize(2);
    for (int i = 0; i < m; ++i) by_length_[1].push_back(Formula::var(i));
}

const std::vector<FormulaPtr>& FormulaEnumerator::of_length(int n) {
    if (n < 1) throw std::invalid_argument("length must be >= 1");
    while (static_cast<int>(by_length_.size()) <= n) {
        int k = static_cast<int>(by_length_.size());
        std::vector<FormulaPtr> out;
        for (const auto& f : by_length_[k - 1]) out.push_back(Formula::neg(f));
        for (int i = 1; i + 1 < k; ++i) {
            int j = k - 1 - i;
            for (const auto& a : by_length_[i])
                for (const auto& b : by_length_[j]) out.push_back(Formula::impl(a, b));
        }
        by_length_.push_back(std::move(out));
    }
    return by_length_[n];
}

}  // namespace tauto
