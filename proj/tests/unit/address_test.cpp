#include <gtest/gtest.h>

#include "cellcheck/address.hpp"

using namespace cellcheck;

TEST(Address, ParsesSmallestAddress) {
    const CellAddress a = parse_address("A1");
    EXPECT_EQ(a.column, 1);
    EXPECT_EQ(a.row, 1);
}

TEST(Address, ParsesD3) {
    const CellAddress a = parse_address("D3", "Sheet1");
    EXPECT_EQ(a.column, 4);
    EXPECT_EQ(a.row, 3);
    EXPECT_EQ(a.sheet, "Sheet1");
}

TEST(Address, LowerCaseLettersAccepted) { EXPECT_EQ(parse_address("ab12").column, 28); }

TEST(Address, RejectsMalformed) {
    for (const char* bad : {"3D", "", "D", "12", "D0", "A-1", "D3 ", "A1B", "XFE1", "A1048577"}) {
        EXPECT_THROW(parse_address(bad), AddressError) << bad;
    }
}

TEST(Address, SheetPrefix) {
    const CellAddress a = parse_address("Data!B2", "Sheet1");
    EXPECT_EQ(a.sheet, "Data");
    const CellAddress q = parse_address("'My Sheet'!C4");
    EXPECT_EQ(q.sheet, "My Sheet");
    EXPECT_EQ(q.qualified(), "'My Sheet'!C4");
}

TEST(Address, ColumnLetters) {
    EXPECT_EQ(column_to_letters(1), "A");
    EXPECT_EQ(column_to_letters(26), "Z");
    EXPECT_EQ(column_to_letters(27), "AA");
    EXPECT_EQ(column_to_letters(702), "ZZ");
    EXPECT_EQ(column_to_letters(703), "AAA");
    EXPECT_EQ(letters_to_column("XFD"), kMaxColumn);
}

TEST(Address, CodecRoundTripForFirstTenThousandColumns) {
    for (int col = 1; col <= 10000; ++col) {
        const CellAddress a{"S", col, col};
        ASSERT_EQ(parse_address(a.to_string(), "S"), a);
        ASSERT_EQ(letters_to_column(column_to_letters(col)), col);
    }
}

TEST(Address, RowMajorOrdering) {
    EXPECT_LT(parse_address("D3", "S"), parse_address("B6", "S"));
    EXPECT_LT(parse_address("B6", "S"), parse_address("C6", "S"));
    EXPECT_LT(parse_address("Z1", "S"), parse_address("A2", "S"));
}

TEST(Address, DisplayOmitsDefaultSheet) {
    const CellAddress a{"Sheet1", 4, 3};
    EXPECT_EQ(a.display("Sheet1"), "D3");
    EXPECT_EQ(a.display("Other"), "Sheet1!D3");
}
