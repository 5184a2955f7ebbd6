#pragma once

#include <string>

#include <json.hpp>

#include "twistfact/conditions.hpp"
#include "twistfact/matrix.hpp"
#include "twistfact/ring.hpp"
#include "twistfact/su3.hpp"
#include "twistfact/twisted_rank.hpp"

namespace twistfact::io {

using Json = nlohmann::ordered_json;

Json matrix_json(const InvolutiveRing& r, const Matrix& m);
// Accepts {"ring": SPEC, "rows": [...]}; when ring is present it must match r.
Matrix matrix_from_json(const InvolutiveRing& r, const Json& j, int n = 3);

Json factorization_json(const InvolutiveRing& r, const Matrix& input, const su3::FactoredForm& f);
Json rank_form_json(const InvolutiveRing& r, const rank::RootSystem& rs, const Matrix& input, const rank::RankForm& f);

Json word_json(const InvolutiveRing& r, const rank::RootSystem& rs, const rank::GeneratorWord& w);
rank::GeneratorWord word_from_json(const InvolutiveRing& r, const rank::RootSystem& rs, const Json& j);

struct RingReport {
    std::string spec;
    std::uint32_t size = 0;
    bool sr1 = false, ssr1 = false, theta_complete = false;
    std::optional<int> c_length;
    std::size_t b1_size = 0, apair_size = 0, apair_star_size = 0, max_ideals = 0;
};
RingReport ring_report(const InvolutiveRing& r, const Caps& caps = Caps::from_env());
Json ring_report_json(const RingReport& rep);

Json ideals_json(const InvolutiveRing& r, const MaximalIdealList& ideals);
Json clength_json(const InvolutiveRing& r, const ClengthCertificate& cert);

// Parses a file or throws InputError naming it.
Json read_json_file(const std::string& path);

}  // namespace twistfact::io
