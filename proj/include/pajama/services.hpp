// Abstract service capabilities consumed by service-backed judges. The HTTP
// implementations live in clients.hpp; tests substitute in-memory fakes.

#pragma once

#include <string>
#include <vector>

namespace pajama {

class EmbeddingService {
public:
    virtual ~EmbeddingService() = default;

    // One vector per input text, order-preserving, consistent dimension.
    virtual std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) = 0;
};

class ClassifierService {
public:
    virtual ~ClassifierService() = default;

    // One probability vector per text; components in [0,1] summing to 1.
    virtual std::vector<std::vector<double>> classify(const std::vector<std::string>& texts,
                                                      const std::string& model_id) = 0;
};

} // namespace pajama
