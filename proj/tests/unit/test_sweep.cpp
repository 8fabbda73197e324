#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mimod2d/coverage.hpp"
#include "mimod2d/errors.hpp"
#include "mimod2d/sweep.hpp"
#include "mimod2d/units.hpp"

using namespace mimod2d;

namespace {

int count_lines(const std::string& s)
{
    int n = 0;
    for (char ch : s) n += ch == '\n';
    return n;
}

std::string csv_of(const std::vector<SweepRow>& rows)
{
    std::ostringstream out;
    emit_csv(rows, out);
    return out.str();
}

}  // namespace

TEST_CASE("grid parsing")
{
    CHECK(parse_int_grid("4:100:2").size() == 49);
    CHECK(parse_int_grid("4:100:2").back() == 100);
    CHECK(parse_int_grid("4,8,70") == std::vector<int>{4, 8, 70});
    CHECK(parse_int_grid("7") == std::vector<int>{7});
    CHECK_THROWS_AS(parse_int_grid("4:1:1"), ConfigError);
    CHECK_THROWS_AS(parse_int_grid("4:10:0"), ConfigError);
    CHECK_THROWS_AS(parse_int_grid("a"), ConfigError);

    const auto lam = parse_real_grid("1e-6:1e-3:20log");
    REQUIRE(lam.size() == 20);
    CHECK(lam.front() == 1e-6);
    CHECK(lam.back() == 1e-3);
    CHECK(lam[1] / lam[0] == doctest::Approx(lam[19] / lam[18]));
    CHECK(parse_real_grid("0:1:5lin")[2] == doctest::Approx(0.5));
    CHECK(parse_real_grid("1e-6,1e-4") == std::vector<double>{1e-6, 1e-4});
    CHECK_THROWS_AS(parse_real_grid("0:1:5log"), ConfigError);
    CHECK_THROWS_AS(parse_real_grid("1e-6:1e-3:xlog"), ConfigError);

    const auto db = parse_db_grid("-10:20:13");
    REQUIRE(db.size() == 13);
    CHECK(db[1] == doctest::Approx(-7.5));
    CHECK_THROWS_AS(parse_db_grid("-10:20"), ConfigError);
}

TEST_CASE("load_config")
{
    const auto c = parse_config("{}");
    const auto ref = SystemParams::reference(4, 1e-6);
    CHECK(c.params.t_c == 4);
    CHECK(c.params.u_c == 4);
    CHECK(c.params.p_c == ref.p_c);
    CHECK(c.params.p_d == ref.p_d);
    CHECK(c.params.a_c == ref.a_c);
    CHECK(c.params.a_d == ref.a_d);
    CHECK(c.params.noise_power == ref.noise_power);
    CHECK(c.params.lambda_d == ref.lambda_d);
    CHECK(c.power.eta == 0.3);
    CHECK(c.power.c0 == 5.0);

    const auto partial = parse_config(R"({"lambda_d": 1e-4})");
    CHECK(partial.params.lambda_d == 1e-4);
    CHECK(partial.params.p_c == ref.p_c);
    CHECK(partial.params.cell_radius == 500.0);

    try {
        parse_config(R"({"u_c": 8, "t_c": 4})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("u_c ≤ t_c") != std::string::npos);
    }

    try {
        parse_config("{\n  \"u_c\": 4,\n  \"t_c\": ]\n}", "bad.json");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bad.json") != std::string::npos);
        CHECK(msg.find("line 3") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_config(R"({"no_such_field": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"u_c": "four"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"pathloss_convention": "sideways"})"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), FileError);

    const auto loss = parse_config(R"({"pathloss_convention": "loss", "p_c_dbm": 30,
        "sweep_tc": "4:8:2", "sweep_lambda_d": [1e-6, 1e-5], "sweep_mode": "both"})");
    CHECK(loss.params.a_d == doctest::Approx(db_to_linear(-38.84)));
    CHECK(loss.params.p_c == doctest::Approx(1.0));
    CHECK(loss.grid.tc_values == std::vector<int>{4, 6, 8});
    CHECK(loss.grid.lambda_values.size() == 2);
    CHECK(loss.grid.mode == SweepMode::both);

    // Resolved parameters round-trip through their JSON form.
    const auto again = parse_config(config_to_json(loss));
    CHECK(again.params.a_d == loss.params.a_d);
    CHECK(again.grid.tc_values == loss.grid.tc_values);
    CHECK(again.grid.lambda_values == loss.grid.lambda_values);

    CHECK_THROWS_AS(parse_config(R"({"sweep_tc": "2:8:2"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sweep_tc": [8, 4]})"), ConfigError);
}

TEST_CASE("single analytic row equals direct module calls")
{
    RunConfig c = parse_config(R"({"sweep_tc": [4], "sweep_lambda_d": [1e-6]})");
    const auto rows = run_sweep(c);
    REQUIRE(rows.size() == 1);
    const auto& r = rows.front();
    const auto d2d = average_rate([&](double b) { return d2d_coverage(c.params, b); }, c.params.bandwidth);
    const auto cue = average_rate([&](double b) { return cue_coverage(c.params, b); }, c.params.bandwidth);
    CHECK(r.rate_d2d == d2d.rate);
    CHECK(r.rate_cue == cue.rate);
    CHECK(r.beta_star_d2d == d2d.beta_star);
    CHECK(r.beta_star_cue == cue.beta_star);
    const auto m = network_metrics(c.params, c.power, cue.rate, d2d.rate);
    CHECK(r.asr == m.asr);
    CHECK(r.total_power == m.total_power);
    CHECK(r.ee == m.ee);
    CHECK_FALSE(r.asr_stderr);

    const std::string csv = csv_of(rows);
    CHECK(count_lines(csv) == 2);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "tc,lambda_d,mode,beta_star_d2d,beta_star_cue,rate_d2d_bps,rate_cue_bps,asr_bps,"
          "total_power_w,ee_bits_per_joule,asr_stderr,ee_stderr");
    CHECK(csv.ends_with(",,\n"));
}

TEST_CASE("zero density row")
{
    RunConfig c = parse_config(R"({"sweep_tc": [8], "sweep_lambda_d": [0]})");
    const auto rows = run_sweep(c);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].asr == 4.0 * rows[0].rate_cue);
    auto p = c.params;
    p.t_c = 8;
    p.lambda_d = 0.0;
    const auto cue = average_rate([&](double b) { return cue_coverage(p, b); }, p.bandwidth);
    CHECK(rows[0].rate_cue == cue.rate);
}

TEST_CASE("both-mode sweep: row layout, agreement, csv round trip, determinism")
{
    RunConfig c = parse_config(R"({"sweep_tc": [4, 70], "sweep_lambda_d": [1e-6, 1e-4],
                                  "sweep_mode": "both", "trials": 100000, "seed": 42})");
    SweepOptions o;
    int calls = 0;
    o.progress = [&](std::size_t, std::size_t total) {
        ++calls;
        CHECK(total == 8);
    };
    const auto rows = run_sweep(c, o);
    CHECK(calls == 8);
    REQUIRE(rows.size() == 8);
    for (std::size_t i = 0; i < rows.size(); i += 2) {
        CHECK(rows[i].mode == SweepMode::analytic);
        CHECK(rows[i + 1].mode == SweepMode::montecarlo);
        CHECK(rows[i].tc == rows[i + 1].tc);
        CHECK(rows[i].lambda_d == rows[i + 1].lambda_d);
        CHECK(rows[i + 1].asr == doctest::Approx(rows[i].asr).epsilon(0.03));
        CHECK(rows[i + 1].asr_stderr.has_value());
        CHECK(*rows[i + 1].ee_stderr == doctest::Approx(*rows[i + 1].asr_stderr / rows[i + 1].total_power));
    }
    CHECK(rows[0].tc == 4);
    CHECK(rows[0].lambda_d == 1e-6);
    CHECK(rows[2].lambda_d == 1e-4);
    CHECK(rows[4].tc == 70);

    const std::string csv = csv_of(rows);
    CHECK(count_lines(csv) == 9);
    std::istringstream in(csv);
    const auto parsed = parse_csv(in);
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(parsed[i].tc == rows[i].tc);
        CHECK(parsed[i].lambda_d == rows[i].lambda_d);
        CHECK(parsed[i].mode == rows[i].mode);
        CHECK(parsed[i].beta_star_d2d == rows[i].beta_star_d2d);
        CHECK(parsed[i].beta_star_cue == rows[i].beta_star_cue);
        CHECK(parsed[i].rate_d2d == rows[i].rate_d2d);
        CHECK(parsed[i].rate_cue == rows[i].rate_cue);
        CHECK(parsed[i].asr == rows[i].asr);
        CHECK(parsed[i].total_power == rows[i].total_power);
        CHECK(parsed[i].ee == rows[i].ee);
        CHECK(parsed[i].asr_stderr == rows[i].asr_stderr);
        CHECK(parsed[i].ee_stderr == rows[i].ee_stderr);
    }

    c.grid.mode = SweepMode::montecarlo;
    c.sim.trials = 20000;
    SweepOptions single;
    single.threads = 1;
    SweepOptions many;
    many.threads = 4;
    CHECK(csv_of(run_sweep(c, single)) == csv_of(run_sweep(c, many)));
}

TEST_CASE("csv file output and units")
{
    RunConfig c = parse_config(R"({"sweep_tc": [4], "sweep_lambda_d": [1e-6]})");
    const auto rows = run_sweep(c);
    const std::string path = "test_sweep_out.csv";
    emit_csv(rows, path);
    std::ifstream in(path);
    const auto back = parse_csv(in);
    CHECK(back.size() == 1);
    std::remove(path.c_str());
    CHECK_THROWS_AS(emit_csv(rows, std::string("/nonexistent/dir/out.csv")), FileError);

    std::ostringstream mbit;
    emit_csv(rows, mbit, OutputUnits::mbit);
    CHECK(mbit.str().find("asr_mbps") != std::string::npos);

    std::ostringstream js;
    emit_json(rows, c, js);
    CHECK(js.str().find("\"meta\"") != std::string::npos);
    CHECK(js.str().find("\"seed\"") != std::string::npos);
    CHECK(js.str().find("\"rows\"") != std::string::npos);

    std::istringstream bad("tc,oops\n");
    CHECK_THROWS_AS(parse_csv(bad), ConfigError);
}

TEST_CASE("failed rows are reported in the csv")
{
    SweepRow r;
    r.tc = 4;
    r.lambda_d = 1e-6;
    r.failed = true;
    r.failure = "x";
    const std::string csv = csv_of({r});
    std::istringstream in(csv);
    const auto back = parse_csv(in);
    REQUIRE(back.size() == 1);
    CHECK(back[0].failed);
}

TEST_CASE("validate_coverage")
{
    SimConfig sim;
    sim.trials = 100000;
    sim.master_seed = 42;
    const auto grid = parse_db_grid("-10:20:13");

    auto p = SystemParams::reference(8, 0.0);
    const auto clean = validate_coverage(p, sim, grid);
    CHECK(clean.rows.size() == 26);
    CHECK(clean.all_pass());

    p = SystemParams::reference(4, 1e-6);
    const auto table = validate_coverage(p, sim, grid);
    CHECK(table.all_pass());

    const auto corrupted = validate_coverage(p, sim, grid, 0.05);
    CHECK_FALSE(corrupted.all_pass());
    CHECK(corrupted.failures() > 0);

    std::ostringstream out;
    emit_report(corrupted, out);
    CHECK(out.str().find("FAIL") != std::string::npos);

    p.t_c = 3;
    CHECK_THROWS(validate_coverage(p, sim, grid));
}
