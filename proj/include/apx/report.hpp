#pragma once

// JSON documents for every computation the CLI reports. Each document has
// `schema_version`, `type` and a self-contained `ring` (table rings carry
// their tables), so verify_document can rebuild and re-check it without the
// original inputs.

#include <string>
#include <vector>

#include "json.hpp"

#include "apx/classify.hpp"
#include "apx/constructive.hpp"
#include "apx/setalg.hpp"
#include "apx/sweep.hpp"

namespace apx {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json descriptor_to_json(const RingDescriptor& d);
RingDescriptor descriptor_from_json(const Json& j);
Json ring_to_json(const Ring& r);
RingHandle ring_from_json(const Json& j);

Json element_to_json(const Ring& r, Element x);
Element element_from_json(const Ring& r, const Json& j);
Json set_to_json(const FiniteSet& s);
FiniteSet set_from_json(const RingHandle& r, const Json& j);

Json witness_to_json(const CoverWitness& w);
CoverWitness witness_from_json(const RingHandle& r, const Json& j);
Json certificate_to_json(const ApproxCertificate& c);
ApproxCertificate certificate_from_json(const RingHandle& r, const Json& j);

// Top-level documents.
Json certificate_document(const ApproxCertificate& c);
Json witness_document(const CoverWitness& w);
Json growth_document(const GrowthProfile& g);
Json fact21_document(const ApproxCertificate& c, const Claim2Result& claim2,
                     const std::vector<CoverWitness>& msum,
                     const std::vector<ConstructiveCoverReport>& table);
Json k11_document(const ApproxCertificate& c, const CoverWitness& w);
Json classification_document(const ClassificationReport& r);
Json search_document(const FiniteSet& x, const SubringSearchResult& r);
Json model_document(const ModelReport& r, const ModelOptions& opts);
Json gallery_document(const GallerySet& g, const std::string& kind, std::int64_t param);
Json sweep_document(const SweepReport& r);

struct VerifyReport {
  bool ok = true;
  std::string type;
  std::vector<std::string> checked;
  std::vector<std::string> failures;
};

// Rebuilds the ring and every set from the document and recomputes each
// claim: witnesses are re-verified, minimal and optimal claims are re-solved,
// derived targets are recomputed and compared.
VerifyReport verify_document(const Json& doc, const Limits& limits = {});

}  // namespace apx
