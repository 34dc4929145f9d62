// Published iteration counts for the three reference experiments, one
// entry per level in the order the experiment presets list them.
#pragma once

#include <vector>

struct ReferenceRow {
  int k;
  int m0;
  int m1;  // 0 when the auxiliary problem is solved exactly
  std::vector<int> counts;
};

using ReferenceTable = std::vector<ReferenceRow>;

// L-shape, symmetric Gauss-Seidel, levels T1..T5
inline const ReferenceTable kTable1 = {
    {0, 1, 1, {19, 18, 19, 19, 19}}, {0, 2, 1, {13, 13, 14, 14, 15}}, {0, 3, 1, {10, 12, 13, 13, 14}},
    {1, 1, 1, {20, 21, 21, 20, 20}}, {1, 2, 1, {13, 14, 14, 15, 15}}, {1, 3, 1, {11, 12, 13, 13, 14}},
    {0, 1, 2, {17, 18, 17, 17, 17}}, {0, 2, 2, {12, 12, 12, 12, 12}}, {0, 3, 2, {10, 10, 10, 11, 11}},
    {1, 1, 2, {20, 20, 20, 20, 19}}, {1, 2, 2, {12, 13, 13, 13, 12}}, {1, 3, 2, {10, 10, 11, 11, 11}},
    {0, 1, 3, {17, 17, 17, 17, 17}}, {0, 2, 3, {12, 11, 11, 11, 11}}, {0, 3, 3, {10, 9, 10, 10, 10}},
    {1, 1, 3, {20, 20, 20, 19, 19}}, {1, 2, 3, {12, 13, 12, 12, 12}}, {1, 3, 3, {10, 10, 10, 10, 10}},
};

// L-shape, one forward Gauss-Seidel sweep, levels T1..T5
inline const ReferenceTable kTable2K0 = {
    {0, 1, 1, {22, 24, 24, 23, 23}},
    {0, 1, 2, {22, 23, 23, 23, 22}},
    {0, 1, 3, {21, 23, 23, 22, 22}},
};
inline const ReferenceTable kTable2K1 = {
    {1, 1, 1, {34, 34, 34, 34, 34}},
    {1, 1, 2, {34, 34, 34, 34, 34}},
    {1, 1, 3, {34, 34, 34, 34, 34}},
};

// Graded square, exact auxiliary solve, levels T5, T10, ..., T25
inline const ReferenceTable kTable3 = {
    {0, 1, 0, {15, 15, 15, 15, 15}}, {0, 2, 0, {12, 12, 12, 12, 12}}, {0, 3, 0, {12, 12, 12, 12, 12}},
    {1, 1, 0, {30, 30, 30, 30, 30}}, {1, 2, 0, {16, 16, 16, 16, 16}}, {1, 3, 0, {12, 12, 12, 12, 12}},
};
