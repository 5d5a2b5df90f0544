#include <string>

#include <gtest/gtest.h>

#include "critheat/config.hpp"
#include "critheat/error.hpp"

namespace {

using critheat::ConfigError;
using critheat::RunConfig;

std::string error_of(const std::string& text) {
    try {
        critheat::parse_config_text(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

TEST(Config, MinimalConfigGetsDefaults) {
    const RunConfig cfg = critheat::parse_config_text(R"({"N":4,"p":4.5,"sigma":1})");
    EXPECT_EQ(cfg.params.N, 4);
    EXPECT_EQ(cfg.frame, critheat::RunFrame::Fisher);
    EXPECT_EQ(cfg.grid.n, 1601u);
    EXPECT_EQ(cfg.grid.lo, -40.0);
    EXPECT_EQ(cfg.time.blowup_threshold, 1e8);
    EXPECT_EQ(cfg.experiment.iterations, 12);
    const auto doc = cfg.to_json();
    EXPECT_TRUE(doc.contains("solver"));
    EXPECT_TRUE(doc.contains("initial"));
    EXPECT_TRUE(doc.contains("experiment"));
}

TEST(Config, DigestIsStableAndSensitive) {
    const std::string text = R"({"N":4,"p":4.5,"sigma":1})";
    const auto a = critheat::parse_config_text(text).digest();
    const auto b = critheat::parse_config_text(text).digest();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.size(), 16u);
    // Spelling out a default does not change the materialized document.
    EXPECT_EQ(critheat::parse_config_text(R"({"N":4,"p":4.5,"sigma":1,"frame":"fisher"})").digest(),
              a);
    EXPECT_NE(critheat::parse_config_text(R"({"N":4,"p":4.25,"sigma":1})").digest(), a);
}

TEST(Config, MaterializedDocumentRoundTrips) {
    const auto cfg = critheat::parse_config_text(
        R"({"N":3,"p":2,"sigma":-2,"initial":{"kind":"plateau","A":1,"r_knee":1},
            "bc":{"left":1.0,"right":"zero"},"experiment":{"scenario":"PlateauA"}})");
    const auto again = critheat::parse_config(cfg.to_json());
    EXPECT_EQ(again.to_json(), cfg.to_json());
    EXPECT_EQ(again.digest(), cfg.digest());
}

TEST(Config, Fnv1aVectors) {
    EXPECT_EQ(critheat::fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(critheat::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Config, ParameterErrors) {
    EXPECT_NE(error_of(R"({"N":4,"p":0.5,"sigma":1})").find("p must exceed 1"), std::string::npos);
    EXPECT_NE(error_of(R"({"N":4,"p":2,"sigma":-3})").find("sigma must be >= -2"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"p":2,"sigma":0})").find("/N"), std::string::npos);
}

TEST(Config, SchemaErrorsCarryPaths) {
    EXPECT_EQ(error_of(R"({"N":4,"p":2,"sigma":0,"bogus":1})"), "/bogus: unknown key");
    EXPECT_NE(error_of(R"({"N":4,"p":2,"sigma":0,"solver":{"dt_init":"x"}})").find("/solver/dt_init"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"N":4,"p":2,"sigma":0,"initial":{"kind":"blob"}})").find("/initial/kind"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"N":4,"p":2,"sigma":0,"grid":{"z_min":1,"z_max":0}})").find("/grid"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"N":4,"p":2,"sigma":0,"frame":"radial","bc":{"left":"far_field"}})")
                  .find("far_field"),
              std::string::npos);
    EXPECT_NE(error_of("{not json").find("malformed JSON"), std::string::npos);
    EXPECT_THROW(critheat::parse_config_file("/nonexistent/critheat.json"), ConfigError);
}

TEST(Config, InitialSpecsRoundTrip) {
    for (const char* text : {R"({"kind":"zero"})", R"({"kind":"bump","center":2,"width":1,"height":3})",
                             R"({"kind":"scaled_U","lambda":0.9})",
                             R"({"kind":"capped_S","cap":2,"fraction":0.25})",
                             R"({"kind":"log_gaussian","amplitude":0.001,"center":0,"width":1})"}) {
        const auto spec = critheat::parse_initial(nlohmann::json::parse(text));
        const auto back = critheat::parse_initial(critheat::initial_to_json(spec));
        EXPECT_EQ(critheat::initial_to_json(back), critheat::initial_to_json(spec)) << text;
    }
}

TEST(Config, RadialGridUsesRadii) {
    const auto cfg = critheat::parse_config_text(
        R"({"N":4,"p":4.5,"sigma":1,"frame":"radial","grid":{"r_lo":0.01,"r_hi":100,"n":101}})");
    const auto c = critheat::derive_constants(cfg.params);
    const auto rc = cfg.radial_config(c);
    EXPECT_NEAR(rc.r_lo, 0.01, 1e-15);
    EXPECT_NEAR(rc.r_hi, 100.0, 1e-12);
    EXPECT_EQ(rc.n, 101u);
}

}  // namespace
