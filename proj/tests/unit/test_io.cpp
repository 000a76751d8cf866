#include "oracles.hpp"

#include "tourcast/csv.hpp"
#include "tourcast/error.hpp"
#include "tourcast/run_config.hpp"
#include "tourcast/svg.hpp"
#include "tourcast/synth.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <regex>
#include <sstream>

using namespace tourcast;
using namespace tourcast::io;

namespace {

ErrorCode parse_error(const std::string& text) {
    std::istringstream in(text);
    try {
        parse_series_csv(in, "x");
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "parsed: " << text;
    return ErrorCode::ConfigError;
}

TimeSeries parse(const std::string& text) {
    std::istringstream in(text);
    return parse_series_csv(in, "x");
}

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

// Minimal well-formedness check: balanced tags, quoted attributes, no raw '&' or '<' in text.
bool well_formed(const std::string& xml) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    while ((i = xml.find('<', i)) != std::string::npos) {
        const auto close = xml.find('>', i);
        if (close == std::string::npos) return false;
        std::string tag = xml.substr(i + 1, close - i - 1);
        const std::size_t text_end = xml.find('<', close);
        const std::string text = xml.substr(close + 1, text_end == std::string::npos ? std::string::npos : text_end - close - 1);
        if (text.find('>') != std::string::npos) return false;
        for (std::size_t a = text.find('&'); a != std::string::npos; a = text.find('&', a + 1)) {
            if (!std::regex_search(text.substr(a), std::regex("^&(amp|lt|gt|quot|apos);"))) return false;
        }
        i = close + 1;
        if (tag.starts_with("?")) continue;
        if (tag.starts_with("/")) {
            if (stack.empty() || stack.back() != tag.substr(1)) return false;
            stack.pop_back();
            continue;
        }
        const bool self_closing = tag.ends_with("/");
        const std::string name = tag.substr(0, tag.find_first_of(" /"));
        if (!std::regex_match(tag, std::regex(R"([A-Za-z]+(\s+[A-Za-z:-]+="[^"<]*")*\s*/?)"))) return false;
        if (!self_closing) stack.push_back(name);
    }
    return stack.empty();
}

}  // namespace

TEST(Csv, TwoRows) {
    const auto s = parse("month,value\n2010-01,1500\n2010-02,1300\n");
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(s.start(), (YearMonth{2010, 1}));
    EXPECT_EQ(s[1], 1300.0);
}

TEST(Csv, GapNamesMissingMonth) {
    std::istringstream in("month,value\n2010-01,1\n2010-03,2\n");
    try {
        parse_series_csv(in, "x");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::GapError);
        EXPECT_NE(std::string(e.what()).find("2010-02"), std::string::npos);
    }
}

TEST(Csv, LessThanOneIsZero) {
    EXPECT_EQ(parse("month,value\n2015-07,<1\n")[0], 0.0);
    EXPECT_EQ(parse("month,value\n2015-07,\"<1\"\n")[0], 0.0);
}

TEST(Csv, CrlfAndBom) {
    const auto s = parse("\xEF\xBB\xBFmonth,value\r\n2010-01,1.5\r\n2010-02,2\r\n");
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0], 1.5);
}

TEST(Csv, Errors) {
    EXPECT_EQ(parse_error("month,value\n2010-02,1\n2010-01,2\n"), ErrorCode::NonMonotonic);
    EXPECT_EQ(parse_error("month,value\n2010-01,1\n2010-01,2\n"), ErrorCode::NonMonotonic);
    EXPECT_EQ(parse_error("month,value\n2010-01,abc\n"), ErrorCode::ParseError);
    EXPECT_EQ(parse_error("month,value\n2010-01,-3\n"), ErrorCode::ParseError);
    EXPECT_EQ(parse_error("month,value\n2010-1,3\n"), ErrorCode::ParseError);
    EXPECT_EQ(parse_error("date,visits\n2010-01,3\n"), ErrorCode::ParseError);
    EXPECT_EQ(parse_error("month,value\n2010-01,3,4\n"), ErrorCode::ParseError);
    EXPECT_EQ(parse_error("month,value\n"), ErrorCode::ParseError);
}

TEST(Csv, ParseErrorNamesLine) {
    std::istringstream in("month,value\n2010-01,1\n2010-02,x\n");
    try {
        parse_series_csv(in, "x", "visits.csv");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("visits.csv:3"), std::string::npos);
    }
}

TEST(Csv, RoundTripIsExact) {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 1 + rng() % 50;
        std::vector<double> v(n);
        for (auto& x : v) {
            const auto bits = (rng() >> 2) & 0x7FEFFFFFFFFFFFFFULL;  // finite, non-negative
            std::memcpy(&x, &bits, sizeof x);
            if (rep % 2) x = std::ldexp(static_cast<double>(rng() >> 11), -20);
        }
        const TimeSeries s({1990 + static_cast<int>(rng() % 40), 1 + static_cast<int>(rng() % 12)}, v, "x");
        std::stringstream buf;
        write_series_csv(s, buf);
        const auto back = parse_series_csv(buf, "x");
        ASSERT_EQ(back.size(), s.size());
        EXPECT_EQ(back.start(), s.start());
        for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(std::bit_cast<std::uint64_t>(back[i]), std::bit_cast<std::uint64_t>(s[i]));
    }
}

TEST(Csv, MetricsAndForecastFiles) {
    const auto dir = std::filesystem::temp_directory_path() / "tourcast_io_test";
    std::filesystem::create_directories(dir);
    eval::EvalReport r;
    r.model_label = "sarimax";
    r.first_month = {2023, 1};
    r.actuals = {100.0, 200.0};
    r.predictions = {90.125, 230.5};
    r.rmse = r.recompute_rmse();
    write_metrics_csv({r}, dir / "metrics.csv");
    write_forecast_csv(r, dir / "forecast.csv");
    std::ifstream m(dir / "metrics.csv");
    std::stringstream ms;
    ms << m.rdbuf();
    EXPECT_EQ(ms.str(), "model,rmse\nsarimax," + format_fixed(r.rmse, 2) + "\n");
    const auto rows = read_forecast_csv(dir / "forecast.csv");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1].month, (YearMonth{2023, 2}));
    EXPECT_EQ(rows[1].predicted, 230.5);
    std::vector<double> a, p;
    for (const auto& row : rows) {
        a.push_back(row.actual);
        p.push_back(row.predicted);
    }
    EXPECT_NEAR(eval::rmse(a, p), r.rmse, 1e-9);
    EXPECT_EQ(format_fixed(eval::rmse(a, p), 2), format_fixed(r.rmse, 2));
    std::filesystem::remove_all(dir);
}

TEST(Format, FixedAndExact) {
    EXPECT_EQ(format_fixed(1726.875, 2), "1726.88");
    EXPECT_EQ(format_fixed(4652.32, 2), "4652.32");
    EXPECT_EQ(format_exact(0.1), "0.1");
    EXPECT_EQ(format_exact(1500.0), "1500");
}

TEST(Synth, SummerPeaksEveryYear) {
    const auto b = synth_dataset(7, 168);
    const auto v = b.target.values();
    for (std::size_t y = 0; y < 14; ++y) {
        std::vector<std::pair<double, int>> months;
        for (int m = 0; m < 12; ++m) months.push_back({v[y * 12 + m], m + 1});
        std::sort(months.rbegin(), months.rend());
        const std::set<int> top{months[0].second, months[1].second};
        EXPECT_EQ(top, (std::set<int>{7, 8})) << "year " << y;
    }
}

TEST(Synth, RegressorCorrelatesAndCovers) {
    for (std::uint64_t seed : {7ULL, 1ULL, 2ULL}) {
        const auto b = synth_dataset(seed, 168);
        const auto& g = b.regressors.at("google_trend");
        EXPECT_TRUE(g.same_range(b.target));
        EXPECT_GT(oracle::correlation(b.target.values(), g.values()), 0.8);
        for (double x : g.values()) {
            EXPECT_GE(x, 0.0);
            EXPECT_LE(x, 100.0);
            EXPECT_EQ(x, std::round(x));
        }
        for (double x : b.target.values()) EXPECT_GE(x, 0.0);
    }
}

TEST(Synth, SpikeMonth) {
    const auto b = synth_dataset(7, 168);
    const auto v = b.target.values();
    const std::size_t spike = 10 * 12 + 6;
    EXPECT_EQ(std::max_element(v.begin(), v.end()) - v.begin(), static_cast<std::ptrdiff_t>(spike));
    EXPECT_GT(v[spike], 1.25 * std::max(v[spike - 12], v[spike + 12]));
}

TEST(Synth, SameSeedSameBundle) {
    const auto a = synth_dataset(11, 60);
    const auto b = synth_dataset(11, 60);
    EXPECT_EQ(a.target, b.target);
    EXPECT_EQ(a.regressors, b.regressors);
    EXPECT_NE(a.target, synth_dataset(12, 60).target);
    EXPECT_THROW(synth_dataset(1, 35), Error);
}

TEST(RunConfig, ParseAndTypes) {
    std::istringstream in("# comment\n n_test = 12\nmodel=sarimax\n\nlist = 4, 2\nflag = true\n");
    const auto c = RunConfig::parse(in);
    EXPECT_EQ(c.get_int("n_test", 0), 12);
    EXPECT_EQ(c.get("model", ""), "sarimax");
    EXPECT_EQ(c.get_sizes("list", {}), (std::vector<std::size_t>{4, 2}));
    EXPECT_TRUE(c.get_bool("flag", false));
    EXPECT_EQ(c.get_double("missing", 2.5), 2.5);
    EXPECT_EQ(c.dump(), "flag = true\nlist = 4, 2\nmodel = sarimax\nn_test = 12\n");
}

TEST(RunConfig, Errors) {
    std::istringstream bad("just words\n");
    EXPECT_THROW(RunConfig::parse(bad), Error);
    std::istringstream in("n = twelve\n");
    const auto c = RunConfig::parse(in);
    try {
        c.get_int("n", 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConfigError);
    }
}

TEST(Svg, OnePolylinePerSeriesAndLabels) {
    Figure f;
    f.title = "Actual & predicted <visitors>";
    f.x_label = "month";
    f.x_ticks = {"2023-01", "2023-02", "2023-03"};
    f.panels.push_back({"panel \"a\"", "visitors", {{"actual", {1, 2, 3}, ""}, {"predicted", {NAN, 2.5, 2.0}, ""}}});
    f.panels.push_back({"b", "index", {{"trend", {5, 5, 5}, ""}}});
    const auto svg = render_svg(f);
    EXPECT_TRUE(well_formed(svg)) << svg;
    EXPECT_EQ(count(svg, "<polyline"), 3u);
    EXPECT_EQ(count(svg, "class=\"axis-label\""), 3u);
    EXPECT_NE(svg.find("Actual &amp; predicted &lt;visitors&gt;"), std::string::npos);
    EXPECT_EQ(svg, render_svg(f));
}

TEST(Svg, Escape) { EXPECT_EQ(xml_escape("a<b>&\"'"), "a&lt;b&gt;&amp;&quot;&apos;"); }
