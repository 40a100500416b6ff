#include "cellcheck/workbook.hpp"

#include "cellcheck/errors.hpp"

namespace cellcheck {

Cell Cell::make_constant(CellAddress address, Value v) {
    return Cell{std::move(address), std::move(v)};
}

Cell Cell::make_formula(CellAddress address, std::string text) {
    return Cell{std::move(address), FormulaSource{std::move(text)}};
}

const Cell* Sheet::find(int column, int row) const {
    auto it = cells_.find({row, column});
    return it == cells_.end() ? nullptr : &it->second;
}

void Sheet::set(Cell cell) {
    cell.address.sheet = name_;
    Key key{cell.address.row, cell.address.column};
    if (!cell.is_formula() && cell.constant().is_blank()) {
        cells_.erase(key);
        return;
    }
    cells_.insert_or_assign(key, std::move(cell));
}

void Sheet::erase(int column, int row) { cells_.erase({row, column}); }

Sheet& Workbook::add_sheet(std::string name) {
    if (find_sheet(name) != nullptr) throw FormatError(name, "duplicate sheet name");
    return sheets_.emplace_back(std::move(name));
}

const Sheet* Workbook::find_sheet(std::string_view name) const {
    for (const auto& s : sheets_) {
        if (s.name() == name) return &s;
    }
    return nullptr;
}

Sheet* Workbook::find_sheet(std::string_view name) {
    for (auto& s : sheets_) {
        if (s.name() == name) return &s;
    }
    return nullptr;
}

std::string Workbook::default_sheet() const {
    return sheets_.empty() ? std::string() : sheets_.front().name();
}

const Cell* Workbook::cell(const CellAddress& addr) const {
    const Sheet* s = find_sheet(addr.sheet);
    return s == nullptr ? nullptr : s->find(addr.column, addr.row);
}

void Workbook::set_cell(Cell cell) {
    Sheet* s = find_sheet(cell.address.sheet);
    if (s == nullptr) throw FormatError(cell.address.qualified(), "unknown sheet");
    s->set(std::move(cell));
}

void Workbook::set_constant(const CellAddress& addr, Value v) {
    set_cell(Cell::make_constant(addr, std::move(v)));
}

void Workbook::set_formula(const CellAddress& addr, std::string text) {
    set_cell(Cell::make_formula(addr, std::move(text)));
}

void Workbook::for_each_cell(const std::function<void(const Cell&)>& fn) const {
    for (const auto& s : sheets_) {
        for (const auto& [key, cell] : s.cells()) fn(cell);
    }
}

std::size_t Workbook::cell_count() const {
    std::size_t n = 0;
    for (const auto& s : sheets_) n += s.size();
    return n;
}

}  // namespace cellcheck
