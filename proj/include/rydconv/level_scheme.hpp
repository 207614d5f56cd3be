#pragma once

#include <array>
#include <string>
#include <vector>

// The fixed five-level ladder of the converter. Index order is part of the
// contract: g=0, e=1, r1=2, r2=3, s=4.

namespace rydconv {

enum Level : int { LvlG = 0, LvlE = 1, LvlR1 = 2, LvlR2 = 3, LvlS = 4 };

inline constexpr int num_levels = 5;

struct Transition {
    enum Kind { Driven, Emission };
    Level lower;
    Level upper;
    Kind kind;
    std::string name;
};

struct LevelScheme {
    std::array<std::string, num_levels> labels;
    std::vector<Transition> transitions;

    static LevelScheme standard();

    int driven_count() const;
    int emission_count() const;
    bool valid() const;
};

} // namespace rydconv
