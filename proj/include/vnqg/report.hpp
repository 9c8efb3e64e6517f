#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace vnqg {

/// Pass thresholds for identity residuals. `tight` applies to identities
/// evaluated along a single construction path; `loose` to comparisons between
/// two independent constructions that each accumulate spectral-calculus error.
struct Thresholds {
    double tight = 1e-10;
    double loose = 1e-9;

    static Thresholds from_base(double base) { return {base, 10.0 * base}; }
};

/// One verified identity. `pass` is always `residual <= tolerance`; a NaN
/// residual marks a check that could not be evaluated (skipped stage).
struct CheckRecord {
    std::string check_id;
    std::string paper_anchor;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string example_id;
    std::string note;
};

class VerificationReport {
public:
    VerificationReport() = default;
    explicit VerificationReport(std::string example_id) : example_id_(std::move(example_id)) {}

    const std::string& example_id() const { return example_id_; }
    void set_example_id(std::string id) {
        example_id_ = std::move(id);
        for (auto& r : records_) r.example_id = example_id_;
    }

    /// Adds a record and returns whether it passed.
    bool add(std::string check_id, std::string anchor, double residual, double tolerance,
             std::string note = {}) {
        CheckRecord r;
        r.check_id = std::move(check_id);
        r.paper_anchor = std::move(anchor);
        r.residual = residual;
        r.tolerance = tolerance;
        r.pass = residual <= tolerance;
        r.example_id = example_id_;
        r.note = std::move(note);
        records_.push_back(std::move(r));
        return records_.back().pass;
    }

    /// Boolean checks are recorded with residual 0 (holds) or 1 (fails).
    bool add_bool(std::string check_id, std::string anchor, bool holds, std::string note = {}) {
        return add(std::move(check_id), std::move(anchor), holds ? 0.0 : 1.0, 0.5, std::move(note));
    }

    void add_skipped(std::string check_id, std::string anchor, std::string note) {
        add(std::move(check_id), std::move(anchor), std::numeric_limits<double>::quiet_NaN(), 0.0,
            std::move(note));
    }

    void merge(const VerificationReport& other) {
        for (auto r : other.records_) {
            if (!example_id_.empty()) r.example_id = example_id_;
            records_.push_back(std::move(r));
        }
        for (const auto& [k, v] : other.timings_) timings_[k] += v;
    }

    /// Prefixes every check id, used when a sub-suite runs on a derived
    /// quantum group (dual, opposite, ...).
    VerificationReport prefixed(const std::string& prefix) const {
        VerificationReport out(example_id_);
        for (auto r : records_) {
            r.check_id = prefix + r.check_id;
            out.records_.push_back(std::move(r));
        }
        out.timings_ = timings_;
        return out;
    }

    void add_timing(const std::string& stage, double seconds) { timings_[stage] += seconds; }

    const std::vector<CheckRecord>& records() const { return records_; }
    const std::map<std::string, double>& timings() const { return timings_; }

    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    std::size_t passed() const {
        return static_cast<std::size_t>(
            std::count_if(records_.begin(), records_.end(), [](const auto& r) { return r.pass; }));
    }
    std::size_t failed() const { return size() - passed(); }
    bool all_pass() const { return failed() == 0; }

    /// Largest residual over records whose id starts with `prefix`; NaN
    /// residuals (skipped) count as +inf.
    double worst(const std::string& prefix = {}) const {
        double w = 0.0;
        for (const auto& r : records_) {
            if (r.check_id.rfind(prefix, 0) != 0) continue;
            double v = std::isnan(r.residual) ? std::numeric_limits<double>::infinity() : r.residual;
            w = std::max(w, v);
        }
        return w;
    }

    bool all_pass(const std::string& prefix) const {
        for (const auto& r : records_)
            if (r.check_id.rfind(prefix, 0) == 0 && !r.pass) return false;
        return true;
    }

    std::vector<CheckRecord> select(const std::string& prefix) const {
        std::vector<CheckRecord> out;
        for (const auto& r : records_)
            if (r.check_id.rfind(prefix, 0) == 0) out.push_back(r);
        return out;
    }

private:
    std::string example_id_;
    std::vector<CheckRecord> records_;
    std::map<std::string, double> timings_;
};

}  // namespace vnqg
