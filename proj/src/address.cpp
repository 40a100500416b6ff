#include "cellcheck/address.hpp"

#include <algorithm>
#include <cctype>

namespace cellcheck {

namespace {

bool is_plain_sheet_name(std::string_view name) {
    if (name.empty() || std::isdigit(static_cast<unsigned char>(name.front()))) {
        return false;
    }
    return std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    });
}

}  // namespace

std::strong_ordering CellAddress::operator<=>(const CellAddress& other) const {
    if (auto c = sheet <=> other.sheet; c != 0) return c;
    if (auto c = row <=> other.row; c != 0) return c;
    return column <=> other.column;
}

std::string column_to_letters(int column) {
    if (column < 1) throw AddressError("column index must be >= 1");
    std::string out;
    while (column > 0) {
        int rem = (column - 1) % 26;
        out.insert(out.begin(), static_cast<char>('A' + rem));
        column = (column - 1) / 26;
    }
    return out;
}

int letters_to_column(std::string_view letters) {
    if (letters.empty()) throw AddressError("empty column letters");
    long long value = 0;
    for (char c : letters) {
        if (!std::isalpha(static_cast<unsigned char>(c))) {
            throw AddressError("invalid column letters '" + std::string(letters) + "'");
        }
        value = value * 26 + (std::toupper(static_cast<unsigned char>(c)) - 'A' + 1);
        if (value > kMaxColumn) {
            throw AddressError("column '" + std::string(letters) + "' out of range");
        }
    }
    return static_cast<int>(value);
}

std::string CellAddress::to_string() const {
    return column_to_letters(column) + std::to_string(row);
}

std::string quote_sheet_name(std::string_view sheet) {
    if (is_plain_sheet_name(sheet)) return std::string(sheet);
    std::string out = "'";
    for (char c : sheet) {
        if (c == '\'') out += '\'';
        out += c;
    }
    out += '\'';
    return out;
}

std::string CellAddress::qualified() const {
    if (sheet.empty()) return to_string();
    return quote_sheet_name(sheet) + "!" + to_string();
}

std::string CellAddress::display(std::string_view default_sheet) const {
    return sheet == default_sheet ? to_string() : qualified();
}

CellAddress parse_address(std::string_view text, std::string_view sheet) {
    if (text.empty()) throw AddressError("empty address");
    CellAddress addr;
    addr.sheet = std::string(sheet);

    if (auto bang = text.rfind('!'); bang != std::string_view::npos) {
        std::string_view prefix = text.substr(0, bang);
        if (prefix.size() >= 2 && prefix.front() == '\'' && prefix.back() == '\'') {
            std::string name;
            std::string_view inner = prefix.substr(1, prefix.size() - 2);
            for (std::size_t i = 0; i < inner.size(); ++i) {
                name += inner[i];
                if (inner[i] == '\'' && i + 1 < inner.size() && inner[i + 1] == '\'') ++i;
            }
            addr.sheet = name;
        } else {
            addr.sheet = std::string(prefix);
        }
        if (addr.sheet.empty()) throw AddressError("empty sheet name in '" + std::string(text) + "'");
        text = text.substr(bang + 1);
    }

    std::size_t split = 0;
    while (split < text.size() && std::isalpha(static_cast<unsigned char>(text[split]))) ++split;
    std::string_view letters = text.substr(0, split);
    std::string_view digits = text.substr(split);
    if (letters.empty() || digits.empty() ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw AddressError("malformed address '" + std::string(text) + "'");
    }
    addr.column = letters_to_column(letters);
    if (digits.size() > 7) throw AddressError("row out of range in '" + std::string(text) + "'");
    int row = std::stoi(std::string(digits));
    if (row < 1 || row > kMaxRow) {
        throw AddressError("row out of range in '" + std::string(text) + "'");
    }
    addr.row = row;
    return addr;
}

}  // namespace cellcheck
