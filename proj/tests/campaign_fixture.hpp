#pragma once

#include <array>

// The five campaign sites with their published per-bucket CO means and
// the hazard description printed for each value. Bucket index: 0 =
// Morning, 1 = Noon, 2 = Afternoon.
struct FixtureCell {
    const char* site_id;
    int bucket;
    double ppm;
    const char* description;
};

inline constexpr const char* kDescSafe = "Classified as safe for human";
inline constexpr const char* kDescLittle45 =
    "A little dangerous if we are in the room for more than 45 minutes";
inline constexpr const char* kDescDanger30 =
    "Classified as dangerous if we are outside the room for more than 30 minutes";
inline constexpr const char* kDescHeart =
    "Classified as dangerous if we are outside the room for more than 30 minutes, "
    "can interfere with the function of the heart";
inline constexpr const char* kDescHeadache =
    "Classified as dangerous if we are outside the room for more than 30 minutes, "
    "can make headaches";
inline constexpr const char* kDescVery15 =
    "Very dangerous if inhalation of more than 15 minutes, will make it difficult to breathe";

inline constexpr std::array<FixtureCell, 15> kCampaignCells = {{
    {"SITE-UNSIKA", 0, 32.916, kDescDanger30},
    {"SITE-UNSIKA", 1, 36.0164, kDescDanger30},
    {"SITE-UNSIKA", 2, 46.7436, kDescHeart},
    {"SITE-UBP", 0, 30.134, kDescDanger30},
    {"SITE-UBP", 1, 30.3468, kDescDanger30},
    {"SITE-UBP", 2, 41.23, kDescHeart},
    {"SITE-SKYBRIDGE", 0, 26.9292, kDescLittle45},
    {"SITE-SKYBRIDGE", 1, 31.6068, kDescDanger30},
    {"SITE-SKYBRIDGE", 2, 41.5176, kDescHeart},
    {"SITE-BINTANGALAM", 0, 39.0796, kDescDanger30},
    {"SITE-BINTANGALAM", 1, 62.3468, kDescHeadache},
    {"SITE-BINTANGALAM", 2, 89.79, kDescVery15},
    {"SITE-MCD", 0, 24.038, kDescSafe},
    {"SITE-MCD", 1, 32.0756, kDescDanger30},
    {"SITE-MCD", 2, 28.7016, kDescLittle45},
}};

inline constexpr double kExpectedMorningMean = 30.61936;
inline constexpr double kExpectedNoonMean = 38.47848;
inline constexpr double kExpectedAfternoonMean = 49.59656;
