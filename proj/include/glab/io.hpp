#pragma once

// CSV rows and JSON documents for every report type. Pair values are written
// as decimal strings with 20 significant digits; plain doubles use the
// shortest round-trip form.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "glab/ddreal.hpp"
#include "glab/extremal.hpp"
#include "glab/gronwall.hpp"
#include "glab/mertens.hpp"
#include "glab/primes.hpp"

namespace glab::io {

using json = nlohmann::ordered_json;

inline constexpr int kDigits = 20;

std::string num(const DDReal& v);
std::string num(double v);
std::string num(const std::optional<DDReal>& v);  ///< empty when absent
json jnum(const DDReal& v);
json jnum(const std::optional<DDReal>& v);        ///< null when absent
DDReal to_dd(const json& v);

void csv_line(std::ostream& out, const std::vector<std::string>& fields);

// primes
extern const std::vector<std::string> kPrimeHeader;  // index,prime
extern const std::vector<std::string> kGapHeader;    // p,gap,normalized
std::vector<std::string> gap_row(const GapSample& s);
json to_json(const GapSample& s);
json to_json(const GapReport& r);

// mertens
extern const std::vector<std::string> kRemainderHeader;  // k,p,theta,S,R,Q,scaledQ
std::vector<std::string> remainder_row(const mertens::RemainderSample& s);
json to_json(const mertens::RemainderSample& s);
json to_json(const mertens::ScanSummary& s);

extern const std::vector<std::string> kThetaHeader;
std::vector<std::string> theta_row(const mertens::ThetaSample& s);
json to_json(const mertens::ThetaSample& s);
json to_json(const mertens::ThetaSummary& s);

extern const std::vector<std::string> kTailHeader;
std::vector<std::string> tail_row(const mertens::TailEstimate& t, const DDReal& J);
json to_json(const mertens::TailEstimate& t, const DDReal& J);

extern const std::vector<std::string> kB1Header;
std::vector<std::string> b1_row(const mertens::B1Result& b);
json to_json(const mertens::B1Result& b);

extern const std::vector<std::string> kCriterionHeader;
std::vector<std::string> criterion_row(const mertens::CriterionRow& r);
json to_json(const mertens::CriterionRow& r);
json to_json(const mertens::CriterionSummary& s);

// extremal
extern const std::vector<std::string> kCertificateHeader;  // k,p,r,nu,eta,E,F,Sk,Uk,Vk,logG,gap,scaledGap,Ck
std::vector<std::string> certificate_row(const extremal::ExtremalCertificate& c);
json to_json(const extremal::FactoredInteger& n);
json to_json(const extremal::ExtremalCertificate& c);
extremal::FactoredInteger factored_from_json(const json& j);
extremal::ExtremalCertificate certificate_from_json(const json& j);
json to_json(const extremal::BigintReport& b);
json to_json(const extremal::LemmaScanSummary& s);

// gronwall
json to_json(const gronwall::GronwallRecord& r);
json to_json(const gronwall::ViolatorReport& r);
gronwall::ViolatorReport violator_report_from_json(const json& j);
extern const std::vector<std::string> kMaxGHeader;
std::vector<std::string> maxg_row(const gronwall::MaxGResult& m);
json to_json(const gronwall::MaxGResult& m);

}  // namespace glab::io
