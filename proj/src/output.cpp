// SPDX-License-Identifier: Apache-2.0
//
// rissim - two-path RIS-assisted propagation simulator
// Copyright (C) 2026 The rissim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include "rissim/output.hpp"
#include "rissim/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <system_error>
#include <fmt/format.h>

namespace rissim
{
    namespace
    {
        void require_rows(const SweepResult &result)
        {
            if (result.rows.empty() || result.strategies.empty())
                throw DomainError("cannot emit an empty sweep result");
        }

        std::string xml_escape(std::string_view s)
        {
            std::string out;
            for (char ch : s)
            {
                switch (ch)
                {
                case '&':
                    out += "&amp;";
                    break;
                case '<':
                    out += "&lt;";
                    break;
                case '>':
                    out += "&gt;";
                    break;
                case '"':
                    out += "&quot;";
                    break;
                case '\'':
                    out += "&apos;";
                    break;
                default:
                    out += ch;
                }
            }
            return out;
        }

        constexpr std::array<std::string_view, 8> palette{
            "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
        };

        // 1, 2 or 5 times a power of ten, giving roughly `target` intervals over `span`
        double nice_step(double span, int target)
        {
            const double raw = span / target;
            const double mag = std::pow(10.0, std::floor(std::log10(raw)));
            for (double f : {1.0, 2.0, 5.0})
                if (f * mag >= raw)
                    return f * mag;
            return 10.0 * mag;
        }
    }

    std::string format_csv(const SweepResult &result)
    {
        require_rows(result);
        std::string out = "d2_m";
        for (StrategyId id : result.strategies)
            out += fmt::format(",{}_dbm", column_name(id));
        out += '\n';
        for (const SweepRow &row : result.rows)
        {
            out += fmt::format("{:.5e}", row.d2);
            for (const StrategyOutcome &o : row.outcomes)
                out += fmt::format(",{:.5e}", o.reported_dbm);
            out += '\n';
        }
        return out;
    }

    std::string format_svg(const SweepResult &result)
    {
        require_rows(result);
        constexpr double width = 800, height = 500;
        constexpr double left = 70, right = 190, top = 40, bottom = 60;
        const double plot_w = width - left - right, plot_h = height - top - bottom;

        const std::vector<double> d2 = result.distances();
        const double x_min = d2.front(), x_max = d2.back();
        const bool log_x = x_max / x_min >= 10.0;

        double y_min = HUGE_VAL, y_max = -HUGE_VAL;
        for (const SweepRow &row : result.rows)
            for (const StrategyOutcome &o : row.outcomes)
            {
                y_min = std::min(y_min, o.reported_dbm);
                y_max = std::max(y_max, o.reported_dbm);
            }
        if (y_max - y_min < 1.0)
        {
            y_min -= 0.5;
            y_max += 0.5;
        }
        const double y_step = nice_step(y_max - y_min, 6);
        y_min = std::floor(y_min / y_step) * y_step;
        y_max = std::ceil(y_max / y_step) * y_step;

        auto x_unit = [&](double x) {
            if (x_max == x_min)
                return 0.5;
            return log_x ? std::log10(x / x_min) / std::log10(x_max / x_min) : (x - x_min) / (x_max - x_min);
        };
        auto px = [&](double x) { return left + plot_w * x_unit(x); };
        auto py = [&](double y) { return top + plot_h * (1.0 - (y - y_min) / (y_max - y_min)); };

        std::string out;
        out += fmt::format("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
                           "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n",
                           width, height);
        out += fmt::format("<title>{}</title>\n", xml_escape(result.name));
        out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", width, height);
        out += fmt::format("<text x=\"{:.2f}\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                           left + plot_w / 2, xml_escape(result.name));

        // y grid and labels
        for (double y = y_min; y <= y_max + 1e-9 * y_step; y += y_step)
        {
            out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#dddddd\"/>\n",
                               left, py(y), left + plot_w, py(y));
            out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", left - 6,
                               py(y) + 4, fmt::format("{:g}", std::abs(y) < 1e-9 ? 0.0 : y));
        }

        // x grid and labels
        std::vector<double> x_ticks;
        if (log_x)
        {
            for (double e = std::ceil(std::log10(x_min) - 1e-12); e <= std::log10(x_max) + 1e-12; e += 1.0)
                x_ticks.push_back(std::pow(10.0, e));
        }
        else if (x_max > x_min)
        {
            const double step = nice_step(x_max - x_min, 6);
            for (double x = std::ceil(x_min / step - 1e-9) * step; x <= x_max + 1e-9 * step; x += step)
                x_ticks.push_back(x);
        }
        else
            x_ticks.push_back(x_min);
        for (double x : x_ticks)
        {
            out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#dddddd\"/>\n",
                               px(x), top, px(x), top + plot_h);
            out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:g}</text>\n", px(x),
                               top + plot_h + 18, x);
        }

        out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
                           "stroke=\"black\"/>\n",
                           left, top, plot_w, plot_h);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">d2 [m]{}</text>\n",
                           left + plot_w / 2, height - 18, log_x ? " (log scale)" : "");
        out += fmt::format("<text x=\"18\" y=\"{0:.2f}\" text-anchor=\"middle\" "
                           "transform=\"rotate(-90 18 {0:.2f})\">received power [dBm]</text>\n",
                           top + plot_h / 2);

        const bool single = result.rows.size() == 1;
        for (std::size_t s = 0; s < result.strategies.size(); ++s)
        {
            const std::string_view color = palette[s % palette.size()];
            if (single)
            {
                const SweepRow &row = result.rows.front();
                out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"{}\"/>\n", px(row.d2),
                                   py(row.outcomes[s].reported_dbm), color);
            }
            else
            {
                out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"", color);
                for (std::size_t i = 0; i < result.rows.size(); ++i)
                {
                    const SweepRow &row = result.rows[i];
                    out += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", px(row.d2), py(row.outcomes[s].reported_dbm));
                }
                out += "\"/>\n";
            }

            const double ly = top + 16 + 20.0 * static_cast<double>(s);
            const double lx = left + plot_w + 16;
            out += "<g class=\"legend-entry\">";
            out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" "
                               "stroke-width=\"3\"/>",
                               lx, ly, lx + 24, ly, color);
            out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text></g>\n", lx + 30, ly + 4,
                               xml_escape(display_name(result.strategies[s])));
        }
        out += "</svg>\n";
        return out;
    }

    void write_file_atomic(const std::filesystem::path &path, std::string_view contents)
    {
        std::filesystem::path tmp = path;
        tmp += ".partial";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw IoError(fmt::format("cannot open {} for writing", tmp.string()));
            out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
            out.flush();
            if (!out)
            {
                out.close();
                std::error_code ignored;
                std::filesystem::remove(tmp, ignored);
                throw IoError(fmt::format("write to {} failed", tmp.string()));
            }
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec)
        {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError(fmt::format("cannot rename {} to {}: {}", tmp.string(), path.string(), ec.message()));
        }
    }

    std::size_t emit_csv(const SweepResult &result, const std::filesystem::path &path)
    {
        const std::string text = format_csv(result);
        write_file_atomic(path, text);
        return text.size();
    }

    std::size_t emit_plot(const SweepResult &result, const std::filesystem::path &path)
    {
        const std::string text = format_svg(result);
        write_file_atomic(path, text);
        return text.size();
    }
}
