#include "nicolas/report.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include "nicolas/errors.hpp"

namespace nicolas {

namespace {

constexpr std::array<std::string_view, 8> command_names{
    "sweep", "qseq", "fsolve", "diagnostics", "crossover", "recurrence", "pnt", "gaps"};

constexpr std::array<std::string_view, 7> sweep_cols{"n",      "p_n", "theta",
                                                     "lhs",    "margin", "q",
                                                     "ratio_form_margin"};
constexpr std::array<std::string_view, 5> qseq_cols{"n", "p_n", "theta", "exponent", "q"};
constexpr std::array<std::string_view, 4> fsolve_cols{"x", "f", "residual", "iterations"};
constexpr std::array<std::string_view, 3> diag_cols{"lemma_id", "x", "residual"};
constexpr std::array<std::string_view, 2> crossover_cols{"x", "e4"};
constexpr std::array<std::string_view, 6> recurrence_cols{"u",          "direct",
                                                          "literal",    "simplified",
                                                          "res_literal", "res_paths"};
constexpr std::array<std::string_view, 4> pnt_cols{"n", "p_n", "theta", "ratio"};
constexpr std::array<std::string_view, 4> gaps_cols{"x", "mean_gap", "f_gap", "ratio"};

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (const char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
            out.push_back(c);
        } else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned char>(c));
            out += buf;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

} // namespace

std::string_view command_name(Command cmd) {
    return command_names[static_cast<std::size_t>(cmd)];
}

std::optional<Command> command_from_name(std::string_view name) {
    for (std::size_t i = 0; i < command_names.size(); ++i)
        if (command_names[i] == name) return static_cast<Command>(i);
    return std::nullopt;
}

std::span<const std::string_view> report_columns(Command cmd) {
    switch (cmd) {
        case Command::sweep: return sweep_cols;
        case Command::qseq: return qseq_cols;
        case Command::fsolve: return fsolve_cols;
        case Command::diagnostics: return diag_cols;
        case Command::crossover: return crossover_cols;
        case Command::recurrence: return recurrence_cols;
        case Command::pnt: return pnt_cols;
        case Command::gaps: return gaps_cols;
    }
    return {};
}

ReportWriter::ReportWriter(const std::filesystem::path& path, ReportFormat format,
                           std::span<const std::string_view> columns)
    : path_(path), format_(format), columns_(columns), out_(path, std::ios::trunc) {
    if (!out_)
        throw io_error("report: cannot open '" + path.string() + "' for writing");
    if (format_ == ReportFormat::csv) {
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i) out_ << ',';
            out_ << columns_[i];
        }
        out_ << '\n';
    } else {
        out_ << "[";
    }
}

ReportWriter::~ReportWriter() {
    try {
        finish();
    } catch (...) {
    }
}

void ReportWriter::begin_cell() {
    if (format_ == ReportFormat::csv) {
        if (col_) out_ << ',';
    } else {
        out_ << (col_ ? "," : (rows_ ? ",\n{" : "\n{"));
        out_ << '"' << columns_[col_] << "\":";
    }
}

ReportWriter& ReportWriter::cell(std::uint64_t v) {
    begin_cell();
    out_ << v;
    ++col_;
    return *this;
}

ReportWriter& ReportWriter::cell(int v) {
    begin_cell();
    out_ << v;
    ++col_;
    return *this;
}

ReportWriter& ReportWriter::cell(double v) {
    begin_cell();
    if (format_ == ReportFormat::json && !std::isfinite(v))
        out_ << "null";
    else
        out_ << format_double(v);
    ++col_;
    return *this;
}

ReportWriter& ReportWriter::cell(std::string_view v) {
    begin_cell();
    if (format_ == ReportFormat::csv)
        out_ << v;
    else
        out_ << '"' << json_escape(v) << '"';
    ++col_;
    return *this;
}

void ReportWriter::end_row() {
    if (col_ != columns_.size())
        throw std::logic_error("report: row has wrong number of cells");
    if (format_ == ReportFormat::csv)
        out_ << '\n';
    else
        out_ << '}';
    col_ = 0;
    ++rows_;
}

void ReportWriter::finish() {
    if (finished_) return;
    finished_ = true;
    if (format_ == ReportFormat::json) out_ << "\n]\n";
    out_.flush();
    if (!out_)
        throw io_error("report: write to '" + path_.string() + "' failed");
}

void emit_plot_script(const std::filesystem::path& report_path, Command cmd,
                      const std::filesystem::path& script_path) {
    if (!std::filesystem::exists(report_path))
        throw io_error("plot: report '" + report_path.string() + "' does not exist");
    std::ofstream out(script_path, std::ios::trunc);
    if (!out)
        throw io_error("plot: cannot open '" + script_path.string() + "' for writing");

    const std::string report = report_path.filename().string();
    out << "# gnuplot script for the " << command_name(cmd) << " report\n";
    out << "set datafile separator ','\n";
    out << "set key autotitle columnhead\n";
    out << "set terminal png size 960,640\n";
    out << "set output '" << report << ".png'\n";
    switch (cmd) {
        case Command::sweep:
            out << "set logscale x\n"
                << "set xlabel 'n'\n"
                << "set ylabel 'margin'\n"
                << "plot '" << report << "' using (column('n')):(column('margin'))"
                << " with lines title 'margin'\n";
            break;
        case Command::qseq:
            out << "set logscale x\n"
                << "set xlabel 'n'\n"
                << "set ylabel 'q'\n"
                << "plot '" << report << "' using (column('n')):(column('q'))"
                << " with linespoints title 'q'\n";
            break;
        case Command::fsolve:
            out << "set logscale x\n"
                << "set xlabel 'x'\n"
                << "set ylabel 'f(x)'\n"
                << "plot '" << report << "' using (column('x')):(column('f'))"
                << " with linespoints title 'f'\n";
            break;
        case Command::diagnostics:
            out << "set logscale x\n"
                << "set xlabel 'x'\n"
                << "set ylabel 'residual'\n"
                << "plot for [id in \"L1-b L1-f-plus L1-f-minus L2 L3 L4\"] '" << report
                << "' using (column('x')):(strcol('lemma_id') eq id ? column('residual') : NaN)"
                << " with linespoints title id\n";
            break;
        case Command::crossover:
            out << "set logscale x\n"
                << "set xlabel 'x'\n"
                << "set ylabel 'f(x) - x - log(x)'\n"
                << "set xzeroaxis\n"
                << "plot '" << report << "' using (column('x')):(column('e4'))"
                << " with linespoints title 'e4'\n";
            break;
        case Command::recurrence:
            out << "set logscale x\n"
                << "set xlabel 'u'\n"
                << "set ylabel 'residual'\n"
                << "plot '" << report << "' using (column('u')):(column('res_literal'))"
                << " with lines title 'direct - literal', '" << report
                << "' using (column('u')):(column('res_paths'))"
                << " with lines title 'literal - simplified'\n";
            break;
        case Command::pnt:
            out << "set logscale x\n"
                << "set xlabel 'n'\n"
                << "set ylabel 'theta(p_n)/p_n'\n"
                << "plot '" << report << "' using (column('n')):(column('ratio'))"
                << " with linespoints title 'ratio'\n";
            break;
        case Command::gaps:
            out << "set logscale x\n"
                << "set xlabel 'x'\n"
                << "set ylabel 'mean gap / (f(x)-x)'\n"
                << "plot '" << report << "' using (column('x')):(column('ratio'))"
                << " with linespoints title 'ratio'\n";
            break;
    }
    out.flush();
    if (!out)
        throw io_error("plot: write to '" + script_path.string() + "' failed");
}

} // namespace nicolas
