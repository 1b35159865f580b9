#ifndef FJPOL_REPORT_HPP
#define FJPOL_REPORT_HPP

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "fjpol/candidates.hpp"
#include "fjpol/conditions.hpp"
#include "fjpol/metrics.hpp"

namespace fjpol {

using Json = nlohmann::ordered_json;

// CSV cells carry 6 significant digits; JSON keeps full precision.
inline std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct TableRow {
    std::string candidate;
    ShiftReport shift;
};

// One row per prejudice, column order dP1..dGDI plus the choice shift.
// The class identities (dGDI = n dP1, dP3 = n dP2) are machine-checked
// before anything is written.
inline std::string delta_table_csv(const std::vector<TableRow>& rows, std::size_t n) {
    std::string out = "candidate,dP1,dP2,dP3,dP4,dNDI,dGDI,choice_shift\n";
    for (const TableRow& r : rows) {
        const MetricDeltas& d = r.shift.delta;
        const double nn = static_cast<double>(n);
        if (std::abs(d.gdi - nn * d.p1) > 1e-9 * (1.0 + std::abs(d.gdi)))
            throw NumericalError("row " + r.candidate + " violates dGDI = n dP1");
        if (std::abs(d.p3 - nn * d.p2) > 1e-9 * (1.0 + std::abs(d.p3)))
            throw NumericalError("row " + r.candidate + " violates dP3 = n dP2");
        out += r.candidate + ',' + csv_num(d.p1) + ',' + csv_num(d.p2) + ',' +
               csv_num(d.p3) + ',' + csv_num(d.p4) + ',' + csv_num(d.ndi) + ',' +
               csv_num(d.gdi) + ',' + csv_num(r.shift.choice_shift) + '\n';
    }
    return out;
}

inline Json shift_to_json(const ShiftReport& r) {
    return Json{{"dP1", r.delta.p1},
                {"dP2", r.delta.p2},
                {"dP3", r.delta.p3},
                {"dP4", r.delta.p4},
                {"dNDI", r.delta.ndi},
                {"dGDI", r.delta.gdi},
                {"choice_shift", r.choice_shift},
                {"polarizing",
                 Json{{"P1", r.polarizing_p1},
                      {"P2", r.polarizing_p2},
                      {"P3", r.polarizing_p3},
                      {"P4", r.polarizing_p4},
                      {"NDI", r.polarizing_ndi},
                      {"GDI", r.polarizing_gdi}}}};
}

inline std::string delta_table_json(const std::vector<TableRow>& rows, std::size_t n) {
    Json arr = Json::array();
    for (const TableRow& r : rows) {
        const MetricDeltas& d = r.shift.delta;
        const double nn = static_cast<double>(n);
        if (std::abs(d.gdi - nn * d.p1) > 1e-9 * (1.0 + std::abs(d.gdi)))
            throw NumericalError("row " + r.candidate + " violates dGDI = n dP1");
        Json j = shift_to_json(r.shift);
        j["candidate"] = r.candidate;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

inline std::string verdicts_json(const std::vector<ConditionVerdict>& verdicts) {
    Json arr = Json::array();
    for (const ConditionVerdict& v : verdicts) {
        Json j{{"class", metric_class_name(v.metric_class)},
               {"verdict", verdict_name(v.verdict)}};
        if (v.witness) j["witness"] = *v.witness;
        else j["witness"] = nullptr;
        j["residuals"] = v.residuals;
        if (!v.note.empty()) j["note"] = v.note;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

inline std::string candidates_json(const std::vector<Candidate>& cands,
                                   const std::vector<TableRow>& rows) {
    Json arr = Json::array();
    for (const Candidate& c : cands) {
        Json j{{"name", c.name}};
        switch (c.status) {
            case CandidateStatus::Ok: j["status"] = "ok"; break;
            case CandidateStatus::NotPolarizing: j["status"] = "not-polarizing"; break;
            case CandidateStatus::Unavailable: j["status"] = "unavailable"; break;
        }
        if (!c.note.empty()) j["note"] = c.note;
        if (c.status == CandidateStatus::Ok) {
            j["provenance"] = provenance_name(c.provenance);
            j["certified"] = c.certified;
            j["predicted_delta"] = c.predicted_delta;
            j["vector"] = c.s;
            for (const TableRow& r : rows)
                if (r.candidate == c.name) {
                    j["shift"] = shift_to_json(r.shift);
                    break;
                }
        }
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

inline std::string matrix_csv(const Mat& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += csv_num(m(i, j));
        }
        out += '\n';
    }
    return out;
}

} // namespace fjpol

#endif // FJPOL_REPORT_HPP
