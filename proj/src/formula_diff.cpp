#include "cellcheck/formula_diff.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <tuple>

#include "cellcheck/formula_ops.hpp"
#include "cellcheck/parser.hpp"

namespace cellcheck {

std::string_view category_name(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::Operator: return "operator";
        case ErrorCategory::Function: return "function";
        case ErrorCategory::Reference: return "reference";
        case ErrorCategory::Constant: return "constant";
        case ErrorCategory::Unclassified: return "unclassified";
    }
    return "unclassified";
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
            diag = up;
        }
    }
    return row[b.size()];
}

std::optional<SpellingHint> spelling_hint(std::string_view found, std::string_view expected) {
    if (found == expected) return std::nullopt;
    const std::size_t limit = std::max<std::size_t>(1, (expected.size() + 3) / 4);
    if (levenshtein(found, expected) > limit) return std::nullopt;
    return SpellingHint{std::string(found), std::string(expected)};
}

namespace {

std::string fragment(const Expr& e, std::string_view sheet) { return print_formula(e, sheet).substr(1); }

// --- item collection -------------------------------------------------------

struct Items {
    std::vector<std::string> operators;  // keyed symbols; unary minus is "u-"
    std::vector<std::string> functions;
    std::vector<CellRef> refs;
    std::vector<Expr> constants;
};

void collect(const Expr& e, Items& out) {
    struct Visitor {
        Items& out;
        void operator()(const NumberLit& n) const { out.constants.push_back(Expr{n}); }
        void operator()(const TextLit& t) const { out.constants.push_back(Expr{t}); }
        void operator()(const BoolLit& b) const { out.constants.push_back(Expr{b}); }
        void operator()(const CellRef& r) const { out.refs.push_back(r); }
        void operator()(const RangeRef& r) const {
            for (auto& c : expand_range(r)) out.refs.push_back(std::move(c));
        }
        void operator()(const Unary& u) const {
            out.operators.push_back(std::string(u.op == UnaryOp::Neg ? "u-" : "u+"));
            collect(*u.operand, out);
        }
        void operator()(const Binary& b) const {
            out.operators.push_back(std::string(operator_symbol(b.op)));
            collect(*b.left, out);
            collect(*b.right, out);
        }
        void operator()(const FuncCall& f) const {
            out.functions.push_back(std::string(function_name(f.function)));
            for (const auto& a : f.args) collect(a, out);
        }
    };
    std::visit(Visitor{out}, e.node);
}

std::string display_operator(const std::string& key) {
    return key.size() == 2 && key[0] == 'u' ? key.substr(1) : key;
}

/// Multiset difference with a custom equality; returns (missing from
/// `have`, surplus in `have`) preserving the order of each side.
template <class T, class Eq>
std::pair<std::vector<T>, std::vector<T>> multiset_diff(const std::vector<T>& want, const std::vector<T>& have,
                                                        Eq eq) {
    std::vector<bool> used(have.size(), false);
    std::vector<T> missing;
    for (const auto& w : want) {
        bool matched = false;
        for (std::size_t i = 0; i < have.size(); ++i) {
            if (!used[i] && eq(w, have[i])) {
                used[i] = true;
                matched = true;
                break;
            }
        }
        if (!matched) missing.push_back(w);
    }
    std::vector<T> surplus;
    for (std::size_t i = 0; i < have.size(); ++i) {
        if (!used[i]) surplus.push_back(have[i]);
    }
    return {missing, surplus};
}

bool ref_less(const CellRef& a, const CellRef& b) {
    return std::tie(a.address, a.col_absolute, a.row_absolute) < std::tie(b.address, b.col_absolute, b.row_absolute);
}

bool constants_match(const Expr& a, const Expr& b, const Tolerance& t) {
    if (const auto* x = a.as<NumberLit>()) {
        const auto* y = b.as<NumberLit>();
        return y != nullptr && values_equal(Value::number(x->value), Value::number(y->value), t);
    }
    return a == b;
}

/// Solution notation for a referenced cell: the first range in the original
/// solution formula that covers it, or the plain reference.
std::string original_notation(const Expr& original, const CellRef& target, std::string_view sheet) {
    std::optional<std::string> hit;
    std::function<void(const Expr&)> walk = [&](const Expr& e) {
        if (hit) return;
        if (const auto* r = e.as<RangeRef>()) {
            const auto& a = r->start.address;
            const auto& b = r->end.address;
            const auto& t = target.address;
            if (t.sheet == a.sheet && t.column >= a.column && t.column <= b.column && t.row >= a.row &&
                t.row <= b.row) {
                hit = fragment(e, sheet);
            }
            return;
        }
        if (const auto* u = e.as<Unary>()) return walk(*u->operand);
        if (const auto* b = e.as<Binary>()) {
            walk(*b->left);
            walk(*b->right);
            return;
        }
        if (const auto* f = e.as<FuncCall>()) {
            for (const auto& a : f->args) walk(a);
        }
    };
    walk(original);
    return hit ? *hit : fragment(Expr{target}, sheet);
}

std::string top_construct(const Expr& e, std::string_view sheet) {
    if (const auto* f = e.as<FuncCall>()) return std::string(function_name(f->function));
    if (const auto* b = e.as<Binary>()) return std::string(operator_symbol(b->op));
    if (const auto* u = e.as<Unary>()) return std::string(operator_symbol(u->op));
    return fragment(e, sheet);
}

std::string constant_fragment(const Value& v) {
    if (v.is_text()) return "\"" + v.as_text() + "\"";
    return to_display(v);
}

// Pairs `missing` with `surplus` index-wise; unpaired surplus becomes extras.
void fill_pairs(ErrorDetail& d, std::vector<std::string> missing, std::vector<std::string> surplus,
                const std::string& kind) {
    for (std::size_t i = missing.size(); i < surplus.size(); ++i) {
        d.extras.push_back({kind, surplus[i], "used too often"});
    }
    d.expected = std::move(missing);
    d.found = std::move(surplus);
}

}  // namespace

ErrorDetail diff_formula(const Cell& solution, const Cell& submission, const Tolerance& tolerance,
                         std::string_view default_sheet) {
    ErrorDetail d;
    d.cell = submission.address;
    const std::string_view sheet = default_sheet.empty() ? std::string_view(solution.address.sheet) : default_sheet;

    if (!solution.is_formula()) {
        d.category = ErrorCategory::Constant;
        d.expected.push_back(constant_fragment(solution.constant()));
        d.found.push_back(submission.is_formula() ? submission.formula().text
                                                  : constant_fragment(submission.constant()));
        if (!submission.is_formula() && submission.constant().is_text() && solution.constant().is_text()) {
            d.spelling = spelling_hint(submission.constant().as_text(), solution.constant().as_text());
        }
        return d;
    }

    const Expr sol_original = parse_formula(solution.formula().text, solution.address.sheet);
    if (!submission.is_formula()) {
        d.category = ErrorCategory::Function;
        d.expected.push_back(top_construct(sol_original, sheet));
        d.found.push_back(constant_fragment(submission.constant()));
        d.extras.push_back({"formula", d.expected.front(), "a formula is expected"});
        return d;
    }
    const Expr sub_original = parse_formula(submission.formula().text, submission.address.sheet);

    Items sol;
    Items sub;
    collect(canonicalize(sol_original), sol);
    collect(canonicalize(sub_original), sub);

    // (a) functions and operators
    auto str_eq = [](const std::string& a, const std::string& b) { return a == b; };
    auto [fn_missing, fn_surplus] = multiset_diff(sol.functions, sub.functions, str_eq);
    auto [op_missing, op_surplus] = multiset_diff(sol.operators, sub.operators, str_eq);
    if (!fn_missing.empty() || !fn_surplus.empty()) {
        d.category = ErrorCategory::Function;
        fill_pairs(d, fn_missing, fn_surplus, "function");
        for (std::size_t i = op_missing.size(); i < op_surplus.size(); ++i) {
            d.extras.push_back({"operator", display_operator(op_surplus[i]), "used too often"});
        }
        return d;
    }
    if (!op_missing.empty() || !op_surplus.empty()) {
        d.category = ErrorCategory::Operator;
        auto disp = [](std::vector<std::string> v) {
            for (auto& s : v) s = display_operator(s);
            return v;
        };
        fill_pairs(d, disp(op_missing), disp(op_surplus), "operator");
        return d;
    }

    // (b) references, including absoluteness
    auto [ref_missing, ref_surplus] = multiset_diff(sol.refs, sub.refs, [](const CellRef& a, const CellRef& b) {
        return a == b;
    });
    if (!ref_missing.empty() || !ref_surplus.empty()) {
        d.category = ErrorCategory::Reference;
        std::sort(ref_missing.begin(), ref_missing.end(), ref_less);
        std::sort(ref_surplus.begin(), ref_surplus.end(), ref_less);
        std::vector<CellRef> missing;
        for (const auto& m : ref_missing) {
            auto it = std::find_if(ref_surplus.begin(), ref_surplus.end(),
                                   [&](const CellRef& s) { return s.address == m.address; });
            if (it != ref_surplus.end()) {
                const bool absolute = m.col_absolute || m.row_absolute;
                d.extras.push_back({absolute ? "absolute_reference" : "relative_reference",
                                    fragment(Expr{*it}, sheet), fragment(Expr{m}, sheet)});
                ref_surplus.erase(it);
            } else {
                missing.push_back(m);
            }
        }
        std::vector<std::string> expected;
        for (const auto& m : missing) {
            std::string text = original_notation(sol_original, m, sheet);
            if (std::find(expected.begin(), expected.end(), text) == expected.end()) {
                expected.push_back(std::move(text));
            }
        }
        std::vector<std::string> found;
        for (const auto& s : ref_surplus) found.push_back(fragment(Expr{s}, sheet));
        for (std::size_t i = missing.size(); i < found.size(); ++i) {
            d.extras.push_back({"reference", found[i], "used too often"});
        }
        d.expected = std::move(expected);
        d.found = std::move(found);
        return d;
    }

    // (c) constants
    auto [c_missing, c_surplus] = multiset_diff(
        sol.constants, sub.constants, [&](const Expr& a, const Expr& b) { return constants_match(a, b, tolerance); });
    if (!c_missing.empty() || !c_surplus.empty()) {
        d.category = ErrorCategory::Constant;
        for (std::size_t i = 0; i < std::min(c_missing.size(), c_surplus.size()) && !d.spelling; ++i) {
            const auto* want = c_missing[i].as<TextLit>();
            const auto* got = c_surplus[i].as<TextLit>();
            if (want && got) d.spelling = spelling_hint(got->text, want->text);
        }
        std::vector<std::string> missing;
        std::vector<std::string> surplus;
        for (const auto& e : c_missing) missing.push_back(fragment(e, sheet));
        for (const auto& e : c_surplus) surplus.push_back(fragment(e, sheet));
        fill_pairs(d, std::move(missing), std::move(surplus), "constant");
        return d;
    }

    d.category = ErrorCategory::Unclassified;
    return d;
}

}  // namespace cellcheck
