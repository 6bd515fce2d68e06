#pragma once

#include <array>
#include <cstdint>

namespace steve::detail {

// Directed octant paths, one row per (center, orientation, path):
// center, sign (+1 / -1), from face, to face. Mirrors data/tableI.txt.
struct TableRow {
  std::uint8_t center;
  std::int8_t sign;
  std::uint8_t from;
  std::uint8_t to;
};

inline constexpr std::array<TableRow, 192> kTranscribedTable{{
    {0, +1, 32, 33}, {0, +1, 33, 38}, {0, +1, 38, 32},
    {0, -1, 33, 32}, {0, -1, 32, 38}, {0, -1, 38, 33},
    {1, +1, 34, 32}, {1, +1, 32, 39}, {1, +1, 39, 34},
    {1, -1, 32, 34}, {1, -1, 34, 39}, {1, -1, 39, 32},
    {2, +1, 32, 35}, {2, +1, 35, 40}, {2, +1, 40, 32},
    {2, -1, 35, 32}, {2, -1, 32, 40}, {2, -1, 40, 35},
    {3, +1, 36, 32}, {3, +1, 32, 41}, {3, +1, 41, 36},
    {3, -1, 32, 36}, {3, -1, 36, 41}, {3, -1, 41, 32},
    {4, +1, 33, 34}, {4, +1, 34, 42}, {4, +1, 42, 33},
    {4, -1, 34, 33}, {4, -1, 33, 42}, {4, -1, 42, 34},
    {5, +1, 35, 33}, {5, +1, 33, 43}, {5, +1, 43, 35},
    {5, -1, 33, 35}, {5, -1, 35, 43}, {5, -1, 43, 33},
    {6, +1, 34, 36}, {6, +1, 36, 44}, {6, +1, 44, 34},
    {6, -1, 36, 34}, {6, -1, 34, 44}, {6, -1, 44, 36},
    {7, +1, 36, 35}, {7, +1, 35, 45}, {7, +1, 45, 36},
    {7, -1, 35, 36}, {7, -1, 36, 45}, {7, -1, 45, 35},
    {8, +1, 33, 37}, {8, +1, 37, 46}, {8, +1, 46, 33},
    {8, -1, 37, 33}, {8, -1, 33, 46}, {8, -1, 46, 37},
    {9, +1, 37, 34}, {9, +1, 34, 47}, {9, +1, 47, 37},
    {9, -1, 34, 37}, {9, -1, 37, 47}, {9, -1, 47, 34},
    {10, +1, 35, 37}, {10, +1, 37, 48}, {10, +1, 48, 35},
    {10, -1, 37, 35}, {10, -1, 35, 48}, {10, -1, 48, 37},
    {11, +1, 37, 36}, {11, +1, 36, 49}, {11, +1, 49, 37},
    {11, -1, 36, 37}, {11, -1, 37, 49}, {11, -1, 49, 36},
    {12, +1, 39, 38}, {12, +1, 38, 42}, {12, +1, 42, 39},
    {12, -1, 38, 39}, {12, -1, 39, 42}, {12, -1, 42, 38},
    {13, +1, 38, 40}, {13, +1, 40, 43}, {13, +1, 43, 38},
    {13, -1, 40, 38}, {13, -1, 38, 43}, {13, -1, 43, 40},
    {14, +1, 41, 39}, {14, +1, 39, 44}, {14, +1, 44, 41},
    {14, -1, 39, 41}, {14, -1, 41, 44}, {14, -1, 44, 39},
    {15, +1, 40, 41}, {15, +1, 41, 45}, {15, +1, 45, 40},
    {15, -1, 41, 40}, {15, -1, 40, 45}, {15, -1, 45, 41},
    {16, +1, 46, 47}, {16, +1, 47, 42}, {16, +1, 42, 46},
    {16, -1, 47, 46}, {16, -1, 46, 42}, {16, -1, 42, 47},
    {17, +1, 48, 46}, {17, +1, 46, 43}, {17, +1, 43, 48},
    {17, -1, 46, 48}, {17, -1, 48, 43}, {17, -1, 43, 46},
    {18, +1, 47, 49}, {18, +1, 49, 44}, {18, +1, 44, 47},
    {18, -1, 49, 47}, {18, -1, 47, 44}, {18, -1, 44, 49},
    {19, +1, 49, 48}, {19, +1, 48, 45}, {19, +1, 45, 49},
    {19, -1, 48, 49}, {19, -1, 49, 45}, {19, -1, 45, 48},
    {20, +1, 51, 50}, {20, +1, 50, 38}, {20, +1, 38, 51},
    {20, -1, 50, 51}, {20, -1, 51, 38}, {20, -1, 38, 50},
    {21, +1, 50, 52}, {21, +1, 52, 39}, {21, +1, 39, 50},
    {21, -1, 52, 50}, {21, -1, 50, 39}, {21, -1, 39, 52},
    {22, +1, 53, 50}, {22, +1, 50, 40}, {22, +1, 40, 53},
    {22, -1, 50, 53}, {22, -1, 53, 40}, {22, -1, 40, 50},
    {23, +1, 50, 54}, {23, +1, 54, 41}, {23, +1, 41, 50},
    {23, -1, 54, 50}, {23, -1, 50, 41}, {23, -1, 41, 54},
    {24, +1, 52, 51}, {24, +1, 51, 42}, {24, +1, 42, 52},
    {24, -1, 51, 52}, {24, -1, 52, 42}, {24, -1, 42, 51},
    {25, +1, 51, 53}, {25, +1, 53, 43}, {25, +1, 43, 51},
    {25, -1, 53, 51}, {25, -1, 51, 43}, {25, -1, 43, 53},
    {26, +1, 54, 52}, {26, +1, 52, 44}, {26, +1, 44, 54},
    {26, -1, 52, 54}, {26, -1, 54, 44}, {26, -1, 44, 52},
    {27, +1, 53, 54}, {27, +1, 54, 45}, {27, +1, 45, 53},
    {27, -1, 54, 53}, {27, -1, 53, 45}, {27, -1, 45, 54},
    {28, +1, 55, 51}, {28, +1, 51, 46}, {28, +1, 46, 55},
    {28, -1, 51, 55}, {28, -1, 55, 46}, {28, -1, 46, 51},
    {29, +1, 52, 55}, {29, +1, 55, 47}, {29, +1, 47, 52},
    {29, -1, 55, 52}, {29, -1, 52, 47}, {29, -1, 47, 55},
    {30, +1, 55, 53}, {30, +1, 53, 48}, {30, +1, 48, 55},
    {30, -1, 53, 55}, {30, -1, 55, 48}, {30, -1, 48, 53},
    {31, +1, 54, 55}, {31, +1, 55, 49}, {31, +1, 49, 54},
    {31, -1, 55, 54}, {31, -1, 54, 49}, {31, -1, 49, 55},
}};

}  // namespace steve::detail
