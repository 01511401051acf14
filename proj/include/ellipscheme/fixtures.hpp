#ifndef ELLIPSCHEME_FIXTURES_HPP
#define ELLIPSCHEME_FIXTURES_HPP

// Frozen local pieces for the M-curve and (M-2)-curve families. The same data
// lives in fixtures/*.txt; ELLIPSCHEME_FIXTURE_DIR points lookups at another
// directory holding files with those names.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string_view>

#include "patchwork.hpp"

namespace ellipscheme {

namespace fixture_text {

inline constexpr std::string_view kBigPlus = R"(1 0 -
5 0 -
0 3 -
2 0 -
4 0 -
1 1 +
2 1 +
3 1 +
0 2 5
2 3 5
0 3 5
2 3 6
3 4 6
2 4 6
1 2 7
2 4 7
1 4 7
0 2 3 5
2 3 4 6
1 2 4 7
)";

inline constexpr std::string_view kBigMinus = R"(1 0 -
5 0 -
0 3 -
2 0 +
4 0 +
1 1 -
2 1 +
3 1 -
0 2 5
2 3 5
0 3 5
2 3 6
3 4 6
2 4 6
1 2 7
2 4 7
1 4 7
0 2 3 5
2 3 4 6
1 2 4 7
)";

inline constexpr std::string_view kSmall = R"(-1 0 -
1 0 -
0 3 -
0 1 +
0 1 3
1 2 3
0 2 3
0 1 2 3
)";

inline constexpr std::string_view kBigModified = R"(1 0 -
5 0 -
0 3 -
2 0 +
1 1 -
2 1 -
3 1 +
0 2 4
2 3 4
0 3 4
2 3 5
1 3 5
1 2 6
2 5 6
1 5 6
0 2 3 4
1 2 3 5
1 2 5 6
)";

}  // namespace fixture_text

inline FixtureSet embedded_fixtures() {
    return {parse_construction(fixture_text::kBigPlus), parse_construction(fixture_text::kBigMinus),
            parse_construction(fixture_text::kSmall), parse_construction(fixture_text::kBigModified)};
}

inline FixtureSet load_fixtures(const std::filesystem::path& dir) {
    auto load = [&](const char* name) {
        std::ifstream in(dir / name);
        if (!in) throw Error(ErrorCode::InvalidFixture, "cannot read " + (dir / name).string());
        return parse_construction(in);
    };
    return {load("big_plus.txt"), load("big_minus.txt"), load("small.txt"), load("big_modified.txt")};
}

/// Fixtures from $ELLIPSCHEME_FIXTURE_DIR when set, the embedded copy otherwise.
inline FixtureSet default_fixtures() {
    if (const char* dir = std::getenv("ELLIPSCHEME_FIXTURE_DIR"); dir && *dir) return load_fixtures(dir);
    return embedded_fixtures();
}

}  // namespace ellipscheme

#endif  // ELLIPSCHEME_FIXTURES_HPP
