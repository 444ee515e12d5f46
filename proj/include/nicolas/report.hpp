#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace nicolas {

enum class ReportFormat { csv, json };

enum class Command { sweep, qseq, fsolve, diagnostics, crossover, recurrence, pnt, gaps };

std::string_view command_name(Command cmd);
std::optional<Command> command_from_name(std::string_view name);

// Fixed column set per command; the CSV header row lists exactly these.
std::span<const std::string_view> report_columns(Command cmd);

// Streams report rows to a file, either as CSV (header + comma-joined rows)
// or as a JSON array of flat objects. Doubles are serialized with 17
// significant digits so that values round-trip exactly; non-finite doubles
// become "nan"/"inf" in CSV and null in JSON. Output bytes depend only on
// the cell values, so identical runs produce identical files.
class ReportWriter {
public:
    ReportWriter(const std::filesystem::path& path, ReportFormat format,
                 std::span<const std::string_view> columns);
    ~ReportWriter();

    ReportWriter(const ReportWriter&) = delete;
    ReportWriter& operator=(const ReportWriter&) = delete;

    ReportWriter& cell(std::uint64_t v);
    ReportWriter& cell(int v);
    ReportWriter& cell(double v);
    ReportWriter& cell(std::string_view v);
    void end_row();

    // Writes the JSON footer if needed and flushes; throws io_error if the
    // stream is in a failed state. Idempotent.
    void finish();

    const std::filesystem::path& path() const { return path_; }

private:
    void begin_cell();

    std::filesystem::path path_;
    ReportFormat format_;
    std::span<const std::string_view> columns_;
    std::ofstream out_;
    std::size_t col_ = 0;
    std::uint64_t rows_ = 0;
    bool finished_ = false;
};

// Writes a gnuplot script for an existing report file to script_path
// (report_path + ".gp" by convention at the call sites). The script
// references CSV columns by name, so it expects a CSV report. Throws
// io_error if the report is missing or the script cannot be written.
void emit_plot_script(const std::filesystem::path& report_path, Command cmd,
                      const std::filesystem::path& script_path);

} // namespace nicolas
