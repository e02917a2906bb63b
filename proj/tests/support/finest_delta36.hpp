/**
 * The five finest matroid subdivisions of Delta(3,6) induced by tau of 3x3
 * matrices, with the bases of every maximal cell. Each printed matrix row is
 * one point, so the configuration used for tau is the transpose.
 */
#pragma once

#include <string>
#include <vector>

namespace dressian::testdata {

struct FinestDelta36 {
    const char* type;
    std::vector<std::vector<int>> rows;
    std::vector<std::string> cells;  ///< space-separated bases per maximal cell
};

inline const std::vector<FinestDelta36>& finest_delta36() {
    static const std::vector<FinestDelta36> data = {
        {"EEEG",
         {{2, 1, 0}, {0, 2, 0}, {0, 0, 1}},
         {
             "123 125 134 135 136 145 156 235 345 356",
             "123 124 134 234 235 236 245 246 345 346",
             "123 124 134 136 146 235 236 245 246 345 346 356 456",
             "123 124 125 126 136 146 156 236 246 256",
             "123 124 125 134 136 145 146 156 235 245 345 356 456",
             "123 124 125 136 146 156 235 236 245 246 256 356 456",
         }},
        {"EEFG",
         {{3, 0, 2}, {0, 1, 0}, {0, 0, 1}},
         {
             "123 125 126 134 136 145 146 156 236 256 346 456",
             "123 125 134 136 145 156 235 236 256 345 346 356 456",
             "123 125 134 135 136 145 156 235 345 356",
             "123 124 134 234 235 236 245 246 345 346",
             "123 124 125 134 145 235 236 245 246 256 345 346 456",
             "123 124 125 126 134 145 146 236 246 256 346 456",
         }},
        {"EEFF(b)",
         {{0, 0, 0}, {0, 1, 2}, {0, 2, 4}},
         {
             "123 124 134 234 235 236 245 246 345 346",
             "123 124 134 135 145 235 236 245 246 345 346 356 456",
             "123 124 134 135 136 145 146 236 246 346 356 456",
             "123 124 125 126 136 146 156 236 246 256",
             "123 124 125 135 145 235 236 245 246 256 356 456",
             "123 124 125 135 136 145 146 156 236 246 256 356 456",
         }},
        {"EFFG",
         {{0, 2, 2}, {0, 3, 0}, {0, 0, 1}},
         {
             "123 125 126 136 156 234 236 245 246 256 346 456",
             "123 125 136 156 234 235 236 245 256 346 356 456",
             "123 125 134 136 145 156 234 235 245 345 346 356 456",
             "123 125 134 135 136 145 156 235 345 356",
             "123 124 125 134 136 145 146 156 234 245 346 456",
             "123 124 125 126 136 146 156 234 245 246 346 456",
         }},
        {"FFFGG",
         {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}},
         {
             "123 125 126 135 156 234 235 245 246 256 345 456",
             "123 126 135 136 156 234 236 246 345 346 356 456",
             "123 126 135 156 234 235 236 246 256 345 356 456",
             "123 126 134 135 136 146 156 234 246 345 346 456",
             "123 124 126 134 135 145 146 156 234 246 345 456",
             "123 124 125 126 135 145 156 234 245 246 345 456",
         }},
    };
    return data;
}

}  // namespace dressian::testdata
