#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "cellcheck/errors.hpp"

namespace cellcheck {

inline constexpr int kMaxColumn = 16384;   // XFD
inline constexpr int kMaxRow = 1048576;

/// A cell coordinate. Ordering is row-major within a sheet; sheets compare by name.
struct CellAddress {
    std::string sheet;
    int column = 1;
    int row = 1;

    /// "D3" form, without the sheet.
    std::string to_string() const;
    /// "Sheet1!D3" form; the sheet name is quoted when it is not a plain word.
    std::string qualified() const;
    /// Short form when `sheet` equals `default_sheet`, qualified otherwise.
    std::string display(std::string_view default_sheet) const;

    bool operator==(const CellAddress&) const = default;
    std::strong_ordering operator<=>(const CellAddress& other) const;
};

/// 1 -> "A", 26 -> "Z", 27 -> "AA".
std::string column_to_letters(int column);
/// Inverse of column_to_letters; letters are case-insensitive.
int letters_to_column(std::string_view letters);

/// Parses "D3" or "Sheet!D3" (case-insensitive letters). `sheet` supplies the
/// sheet when the text has no prefix. Throws AddressError.
CellAddress parse_address(std::string_view text, std::string_view sheet = {});

/// Renders a sheet name for use in a reference prefix.
std::string quote_sheet_name(std::string_view sheet);

}  // namespace cellcheck
