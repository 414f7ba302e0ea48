// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#include "crackbench/report.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "crackbench/strutil.hpp"

namespace crackbench {

TechniqueRun technique_run_from_percent(std::string technique, std::string model,
                                        double map_pct, double precision_pct,
                                        double recall_pct, double f1_pct,
                                        const EvalConfig& config) {
  TechniqueRun run;
  run.technique = std::move(technique);
  run.model = std::move(model);
  run.report.config = config;
  run.report.map = map_pct / 100.0;
  run.report.macro.precision = precision_pct / 100.0;
  run.report.macro.recall = recall_pct / 100.0;
  run.report.macro.f1 = f1_pct / 100.0;
  return run;
}

namespace {

ComparisonRow row_from_run(const TechniqueRun& run) {
  ComparisonRow row;
  row.technique = run.technique;
  row.model = run.model;
  row.map = run.report.map * 100.0;
  row.precision = run.report.macro.precision * 100.0;
  row.recall = run.report.macro.recall * 100.0;
  row.f1 = run.report.macro.f1 * 100.0;
  return row;
}

}  // namespace

ComparisonTable compare(const TechniqueRun& baseline,
                        std::span<const TechniqueRun> variants) {
  ComparisonTable table;
  table.config = baseline.report.config;

  std::set<std::pair<std::string, std::string>> seen;
  seen.insert({baseline.technique, baseline.model});

  ComparisonRow base = row_from_run(baseline);
  base.is_baseline = true;
  table.rows.push_back(base);

  for (const auto& variant : variants) {
    if (variant.report.config != table.config) {
      throw Error(Errc::ConfigMismatch,
                  "run '" + variant.technique + "/" + variant.model +
                      "' was evaluated under a different metric configuration");
    }
    if (!seen.insert({variant.technique, variant.model}).second) {
      throw Error(Errc::InvalidArgument, "duplicate (technique, model) pair '" +
                                             variant.technique + "/" + variant.model + "'");
    }
    ComparisonRow row = row_from_run(variant);
    row.d_map = row.map - base.map;
    row.d_precision = row.precision - base.precision;
    row.d_recall = row.recall - base.recall;
    row.d_f1 = row.f1 - base.f1;
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

std::string signed_1dp(double delta) {
  std::string body = format_1dp(delta < 0 ? -delta : delta);
  return (delta < 0 ? "-" : "+") + body;
}

std::string metric_cell(double value, double delta, bool is_baseline) {
  std::string cell = format_1dp(value);
  if (!is_baseline) {
    cell += " (" + signed_1dp(delta) + ")";
  }
  return cell;
}

constexpr std::string_view kCsvHeader =
    "technique,model,map,precision,recall,f1,delta_map,delta_precision,delta_recall,"
    "delta_f1";

}  // namespace

std::string render(const ComparisonTable& table, RenderFormat format) {
  if (format == RenderFormat::csv) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& row : table.rows) {
      out += csv_escape(row.technique);
      out += ',';
      out += csv_escape(row.model);
      out += ',';
      out += format_exact(row.map);
      out += ',';
      out += format_exact(row.precision);
      out += ',';
      out += format_exact(row.recall);
      out += ',';
      out += format_exact(row.f1);
      out += ',';
      out += format_exact(row.d_map);
      out += ',';
      out += format_exact(row.d_precision);
      out += ',';
      out += format_exact(row.d_recall);
      out += ',';
      out += format_exact(row.d_f1);
      out += '\n';
    }
    return out;
  }

  std::string out;
  out += "| Technique | Model | MAP | Precision | Recall | F1-Score |\n";
  out += "|---|---|---|---|---|---|\n";
  for (const auto& row : table.rows) {
    out += "| " + row.technique;
    out += " | " + row.model;
    out += " | " + metric_cell(row.map, row.d_map, row.is_baseline);
    out += " | " + metric_cell(row.precision, row.d_precision, row.is_baseline);
    out += " | " + metric_cell(row.recall, row.d_recall, row.is_baseline);
    out += " | " + metric_cell(row.f1, row.d_f1, row.is_baseline);
    out += " |\n";
  }
  return out;
}

ComparisonTable parse_comparison_csv(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.empty() || trim(lines[0]) != kCsvHeader) {
    throw Error(Errc::MalformedLine, "comparison CSV must start with the standard header");
  }
  ComparisonTable table;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    auto fields = csv_split_line(lines[i]);
    if (fields.size() != 10) {
      throw Error(Errc::MalformedLine, "comparison CSV line " + std::to_string(i + 1) +
                                           ": expected 10 fields");
    }
    ComparisonRow row;
    row.technique = fields[0];
    row.model = fields[1];
    double* slots[] = {&row.map,   &row.precision,   &row.recall,   &row.f1,
                       &row.d_map, &row.d_precision, &row.d_recall, &row.d_f1};
    for (int k = 0; k < 8; ++k) {
      if (!parse_double(fields[static_cast<std::size_t>(k) + 2], *slots[k])) {
        throw Error(Errc::MalformedLine, "comparison CSV line " + std::to_string(i + 1) +
                                             ": bad number '" + fields[static_cast<std::size_t>(k) + 2] + "'");
      }
    }
    row.is_baseline = table.rows.empty();
    table.rows.push_back(std::move(row));
  }
  return table;
}

Direction classify_delta(double delta_pp) {
  if (delta_pp >= 0.05) return Direction::improved;
  if (delta_pp <= -0.05) return Direction::declined;
  return Direction::unchanged;
}

std::string_view direction_phrase(Direction d) {
  switch (d) {
    case Direction::improved: return "improved";
    case Direction::declined: return "declined";
    case Direction::unchanged: return "stayed almost the same";
  }
  return "stayed almost the same";
}

std::string narrate(const ComparisonTable& table) {
  if (table.rows.empty()) return "";
  const ComparisonRow& base = table.rows.front();
  std::string out;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const ComparisonRow& row = table.rows[i];
    const std::pair<const char*, double> metrics[] = {
        {"MAP", row.d_map},
        {"Precision", row.d_precision},
        {"Recall", row.d_recall},
        {"F1-Score", row.d_f1},
    };
    out += row.technique + " (" + row.model + ") vs " + base.technique + " (" +
           base.model + "): ";
    for (std::size_t m = 0; m < 4; ++m) {
      if (m > 0) out += "; ";
      Direction dir = classify_delta(metrics[m].second);
      out += metrics[m].first;
      out += ' ';
      out += direction_phrase(dir);
      if (dir != Direction::unchanged) {
        out += " by " + format_1dp(std::abs(metrics[m].second)) + " pp";
      }
    }
    out += ".\n";
  }
  return out;
}

}  // namespace crackbench
