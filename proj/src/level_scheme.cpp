#include "rydconv/level_scheme.hpp"

#include <algorithm>

namespace rydconv {

LevelScheme LevelScheme::standard() {
    LevelScheme s;
    s.labels = {"5S1/2", "5P3/2", "55D5/2", "54F7/2", "5D5/2"};
    s.transitions = {
        {LvlG, LvlE, Transition::Driven, "probe"},
        {LvlE, LvlR1, Transition::Driven, "coupling"},
        {LvlR1, LvlR2, Transition::Driven, "microwave"},
        // decoupling drives r2 -> s, downward in energy
        {LvlS, LvlR2, Transition::Driven, "decoupling"},
        {LvlE, LvlS, Transition::Emission, "signal"},
    };
    return s;
}

int LevelScheme::driven_count() const {
    return static_cast<int>(std::count_if(transitions.begin(), transitions.end(),
        [](const Transition& t) { return t.kind == Transition::Driven; }));
}

int LevelScheme::emission_count() const {
    return static_cast<int>(transitions.size()) - driven_count();
}

bool LevelScheme::valid() const {
    return labels.size() == num_levels && driven_count() == 4 && emission_count() == 1;
}

} // namespace rydconv
