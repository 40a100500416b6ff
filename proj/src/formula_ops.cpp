#include "cellcheck/formula_ops.hpp"

#include <algorithm>
#include <tuple>

#include "cellcheck/parser.hpp"

namespace cellcheck {

std::vector<CellRef> expand_range(const RangeRef& r, std::size_t bound) {
    const auto& a = r.start.address;
    const auto& b = r.end.address;
    const std::size_t cols = static_cast<std::size_t>(b.column - a.column + 1);
    const std::size_t rows = static_cast<std::size_t>(b.row - a.row + 1);
    if (cols * rows > bound) {
        throw FormulaError(FormulaError::Kind::Capacity, 0,
                           "range " + a.to_string() + ":" + b.to_string() + " covers " +
                               std::to_string(cols * rows) + " cells, more than the limit of " +
                               std::to_string(bound));
    }
    const bool col_abs = r.start.col_absolute && r.end.col_absolute;
    const bool row_abs = r.start.row_absolute && r.end.row_absolute;
    std::vector<CellRef> out;
    out.reserve(cols * rows);
    for (int row = a.row; row <= b.row; ++row) {
        for (int col = a.column; col <= b.column; ++col) {
            out.push_back(CellRef{CellAddress{a.sheet, col, row}, col_abs, row_abs});
        }
    }
    return out;
}

namespace {

void collect_refs(const Expr& e, std::size_t bound, std::vector<CellAddress>& out) {
    struct Visitor {
        std::size_t bound;
        std::vector<CellAddress>& out;
        void operator()(const NumberLit&) const {}
        void operator()(const TextLit&) const {}
        void operator()(const BoolLit&) const {}
        void operator()(const CellRef& r) const { out.push_back(r.address); }
        void operator()(const RangeRef& r) const {
            for (const auto& c : expand_range(r, bound)) out.push_back(c.address);
        }
        void operator()(const Unary& u) const { collect_refs(*u.operand, bound, out); }
        void operator()(const Binary& b) const {
            collect_refs(*b.left, bound, out);
            collect_refs(*b.right, bound, out);
        }
        void operator()(const FuncCall& f) const {
            for (const auto& a : f.args) collect_refs(a, bound, out);
        }
    };
    std::visit(Visitor{bound, out}, e.node);
}

// --- canonicalization -------------------------------------------------------

void flatten(const Expr& e, BinaryOp op, std::vector<Expr>& out) {
    if (const auto* b = e.as<Binary>(); b != nullptr && b->op == op) {
        flatten(*b->left, op, out);
        flatten(*b->right, op, out);
        return;
    }
    out.push_back(e);
}

int operand_class(const Expr& e) {
    if (e.is<CellRef>()) return 0;
    if (e.is<NumberLit>()) return 1;
    return 2;
}

bool operand_less(const Expr& a, const Expr& b) {
    const int ca = operand_class(a);
    const int cb = operand_class(b);
    if (ca != cb) return ca < cb;
    if (ca == 0) {
        const auto& ra = *a.as<CellRef>();
        const auto& rb = *b.as<CellRef>();
        return std::tie(ra.address, ra.col_absolute, ra.row_absolute) <
               std::tie(rb.address, rb.col_absolute, rb.row_absolute);
    }
    if (ca == 1) return a.as<NumberLit>()->value < b.as<NumberLit>()->value;
    return print_formula(a) < print_formula(b);
}

Expr chain(BinaryOp op, std::vector<Expr> operands) {
    std::stable_sort(operands.begin(), operands.end(), operand_less);
    Expr acc = std::move(operands.front());
    for (std::size_t i = 1; i < operands.size(); ++i) {
        acc = binary(op, std::move(acc), std::move(operands[i]));
    }
    return acc;
}

// Expanded operand list of an aggregate call: ranges become their cells.
std::vector<Expr> expand_operands(const std::vector<Expr>& args, std::size_t bound) {
    std::vector<Expr> out;
    for (const auto& a : args) {
        if (const auto* r = a.as<RangeRef>()) {
            for (auto& c : expand_range(*r, bound)) out.push_back(Expr{std::move(c)});
        } else {
            out.push_back(a);
        }
    }
    return out;
}

Expr canon_once(const Expr& e, std::size_t bound) {
    struct Visitor {
        std::size_t bound;
        Expr operator()(const NumberLit& n) const { return Expr{n}; }
        Expr operator()(const TextLit& t) const { return Expr{t}; }
        Expr operator()(const BoolLit& b) const { return Expr{b}; }
        Expr operator()(const CellRef& r) const { return Expr{r}; }
        Expr operator()(const RangeRef& r) const { return Expr{r}; }
        Expr operator()(const Unary& u) const {
            Expr inner = canon_once(*u.operand, bound);
            if (u.op == UnaryOp::Neg) {
                if (const auto* nested = inner.as<Unary>(); nested && nested->op == UnaryOp::Neg) {
                    return *nested->operand;
                }
            }
            return unary(u.op, std::move(inner));
        }
        Expr operator()(const Binary& b) const {
            Expr l = canon_once(*b.left, bound);
            Expr r = canon_once(*b.right, bound);
            if (b.op == BinaryOp::Add || b.op == BinaryOp::Mul) {
                std::vector<Expr> ops;
                flatten(l, b.op, ops);
                flatten(r, b.op, ops);
                return chain(b.op, std::move(ops));
            }
            return binary(b.op, std::move(l), std::move(r));
        }
        Expr operator()(const FuncCall& f) const {
            std::vector<Expr> args;
            args.reserve(f.args.size());
            for (const auto& a : f.args) args.push_back(canon_once(a, bound));
            if ((f.function == Function::Sum || f.function == Function::Avg) && !args.empty()) {
                std::vector<Expr> operands = expand_operands(args, bound);
                const auto n = static_cast<double>(operands.size());
                std::vector<Expr> flat;
                for (const auto& o : operands) flatten(o, BinaryOp::Add, flat);
                Expr sum = chain(BinaryOp::Add, std::move(flat));
                if (f.function == Function::Sum) return sum;
                return binary(BinaryOp::Div, std::move(sum), number(n));
            }
            return call(f.function, std::move(args));
        }
    };
    return std::visit(Visitor{bound}, e.node);
}

}  // namespace

std::vector<CellAddress> references_of(const Expr& e, std::size_t bound) {
    std::vector<CellAddress> out;
    collect_refs(e, bound, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Expr canonicalize(const Expr& e, std::size_t bound) {
    Expr current = canon_once(e, bound);
    for (int i = 0; i < 32; ++i) {
        Expr next = canon_once(current, bound);
        if (next == current) break;
        current = std::move(next);
    }
    return current;
}

std::map<CellAddress, Expr> parse_formulas(const Workbook& wb) {
    std::map<CellAddress, Expr> out;
    wb.for_each_cell([&](const Cell& cell) {
        if (!cell.is_formula()) return;
        try {
            out.emplace(cell.address, parse_formula(cell.formula().text, cell.address.sheet));
        } catch (const FormulaError&) {
        }
    });
    return out;
}

}  // namespace cellcheck
