#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nicolas/errors.hpp"
#include "nicolas/report.hpp"

using namespace nicolas;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_two_pnt_rows(const std::filesystem::path& path, ReportFormat fmt) {
    ReportWriter w(path, fmt, report_columns(Command::pnt));
    w.cell(std::uint64_t{2}).cell(std::uint64_t{3}).cell(1.0 / 3.0).cell(0.59725315640935162);
    w.end_row();
    w.cell(std::uint64_t{5}).cell(std::uint64_t{11}).cell(7.7450028035158391).cell(
        std::numeric_limits<double>::quiet_NaN());
    w.end_row();
    w.finish();
}

} // namespace

TEST_SUITE("report") {

TEST_CASE("command names round-trip") {
    for (const Command cmd :
         {Command::sweep, Command::qseq, Command::fsolve, Command::diagnostics,
          Command::crossover, Command::recurrence, Command::pnt, Command::gaps}) {
        const auto back = command_from_name(command_name(cmd));
        REQUIRE(back.has_value());
        CHECK(*back == cmd);
    }
    CHECK_FALSE(command_from_name("nope").has_value());
}

TEST_CASE("column sets are pinned") {
    const auto join = [](std::span<const std::string_view> cols) {
        std::string s;
        for (const auto c : cols) {
            if (!s.empty()) s += ',';
            s += c;
        }
        return s;
    };
    CHECK(join(report_columns(Command::sweep)) == "n,p_n,theta,lhs,margin,q,ratio_form_margin");
    CHECK(join(report_columns(Command::diagnostics)) == "lemma_id,x,residual");
    CHECK(join(report_columns(Command::recurrence)) ==
          "u,direct,literal,simplified,res_literal,res_paths");
    CHECK(join(report_columns(Command::pnt)) == "n,p_n,theta,ratio");
    CHECK(join(report_columns(Command::gaps)) == "x,mean_gap,f_gap,ratio");
    CHECK(join(report_columns(Command::qseq)) == "n,p_n,theta,exponent,q");
    CHECK(join(report_columns(Command::fsolve)) == "x,f,residual,iterations");
    CHECK(join(report_columns(Command::crossover)) == "x,e4");
}

TEST_CASE("csv bytes: header, 17 significant digits, nan passthrough") {
    const auto path = temp_file("nicolas_report_pnt.csv");
    write_two_pnt_rows(path, ReportFormat::csv);
    CHECK(slurp(path) ==
          "n,p_n,theta,ratio\n"
          "2,3,0.33333333333333331,0.59725315640935162\n"
          "5,11,7.7450028035158391,nan\n");
    std::filesystem::remove(path);
}

TEST_CASE("json parses, preserves values, and nulls non-finite cells") {
    const auto path = temp_file("nicolas_report_pnt.json");
    write_two_pnt_rows(path, ReportFormat::json);
    const auto doc = nlohmann::json::parse(slurp(path));
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 2);
    CHECK(doc[0]["n"] == 2);
    CHECK(doc[0]["p_n"] == 3);
    CHECK(doc[0]["theta"].get<double>() == 1.0 / 3.0);
    CHECK(doc[0]["ratio"].get<double>() == 0.59725315640935162);
    CHECK(doc[1]["ratio"].is_null());
    std::filesystem::remove(path);
}

TEST_CASE("identical rows produce identical bytes") {
    const auto a = temp_file("nicolas_report_det_a.csv");
    const auto b = temp_file("nicolas_report_det_b.csv");
    write_two_pnt_rows(a, ReportFormat::csv);
    write_two_pnt_rows(b, ReportFormat::csv);
    CHECK(slurp(a) == slurp(b));
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

TEST_CASE("row arity is checked") {
    const auto path = temp_file("nicolas_report_arity.csv");
    ReportWriter w(path, ReportFormat::csv, report_columns(Command::crossover));
    w.cell(10.0);
    CHECK_THROWS_AS(w.end_row(), std::logic_error);
    std::filesystem::remove(path);
}

TEST_CASE("unwritable path raises io_error") {
    CHECK_THROWS_AS(ReportWriter("/no/such/dir/report.csv", ReportFormat::csv,
                                 report_columns(Command::pnt)),
                    io_error);
}

TEST_CASE("plot scripts reference the report and its columns") {
    const auto report = temp_file("nicolas_plot_source.csv");
    write_two_pnt_rows(report, ReportFormat::csv);
    for (const Command cmd :
         {Command::sweep, Command::qseq, Command::fsolve, Command::diagnostics,
          Command::crossover, Command::recurrence, Command::pnt, Command::gaps}) {
        auto script = temp_file("nicolas_plot_script.gp");
        emit_plot_script(report, cmd, script);
        const std::string text = slurp(script);
        CHECK(text.find("plot ") != std::string::npos);
        CHECK(text.find("set datafile separator ','") != std::string::npos);
        CHECK(text.find(report.filename().string()) != std::string::npos);
        std::filesystem::remove(script);
    }
    std::filesystem::remove(report);
}

TEST_CASE("plot needs an existing report") {
    CHECK_THROWS_AS(
        emit_plot_script(temp_file("nicolas_no_report.csv"), Command::sweep,
                         temp_file("nicolas_no_report.gp")),
        io_error);
}

} // TEST_SUITE
