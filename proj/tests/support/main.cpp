#include "support/seed.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        std::string value;
        if (a == "--seed" && i + 1 < argc) value = argv[++i];
        else if (a.rfind("--seed=", 0) == 0) value = a.substr(7);
        else continue;
        try {
            dressian::testdata::seed_offset() = std::stoull(value);
        } catch (const std::exception&) {
            std::cerr << "invalid --seed value: " << value << '\n';
            return 2;
        }
    }
    if (dressian::testdata::seed_offset() != 0) std::cout << "seed offset " << dressian::testdata::seed_offset() << '\n';
    return RUN_ALL_TESTS();
}
