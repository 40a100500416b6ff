#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cellcheck/address.hpp"
#include "cellcheck/value.hpp"

namespace cellcheck {

/// Formula text as entered, including the leading '='. Parsing lives in the
/// formula layer (parser.hpp).
struct FormulaSource {
    std::string text;
    bool operator==(const FormulaSource&) const = default;
};

struct Cell {
    CellAddress address;
    std::variant<Value, FormulaSource> content;

    bool is_formula() const { return std::holds_alternative<FormulaSource>(content); }
    const FormulaSource& formula() const { return std::get<FormulaSource>(content); }
    const Value& constant() const { return std::get<Value>(content); }

    static Cell make_constant(CellAddress address, Value v);
    static Cell make_formula(CellAddress address, std::string text);

    bool operator==(const Cell&) const = default;
};

/// Cells keyed by (row, column), so iteration is row-major.
class Sheet {
public:
    using Key = std::pair<int, int>;

    explicit Sheet(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    const std::map<Key, Cell>& cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }

    const Cell* find(int column, int row) const;
    /// Blank constants are not stored: setting one erases the cell.
    void set(Cell cell);
    void erase(int column, int row);

    bool operator==(const Sheet&) const = default;

private:
    std::string name_;
    std::map<Key, Cell> cells_;
};

/// Ordered sheets with unique names. Absent addresses denote Blank.
class Workbook {
public:
    Workbook() = default;
    explicit Workbook(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    const std::vector<Sheet>& sheets() const { return sheets_; }
    /// Throws FormatError on a duplicate name.
    Sheet& add_sheet(std::string name);
    const Sheet* find_sheet(std::string_view name) const;
    Sheet* find_sheet(std::string_view name);
    /// Name of the first sheet, or "" for an empty workbook.
    std::string default_sheet() const;

    const Cell* cell(const CellAddress& addr) const;
    /// The sheet must exist. Blank constants erase.
    void set_cell(Cell cell);
    void set_constant(const CellAddress& addr, Value v);
    void set_formula(const CellAddress& addr, std::string text);

    /// Visits every stored cell: sheets in order, cells row-major.
    void for_each_cell(const std::function<void(const Cell&)>& fn) const;
    std::size_t cell_count() const;

    bool operator==(const Workbook&) const = default;

private:
    std::string name_;
    std::vector<Sheet> sheets_;
};

}  // namespace cellcheck
