#include "cvbench/dataio.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cvbench/csv.hpp"
#include "cvbench/errors.hpp"

namespace cvbench {

const DescriptorSet& Dataset::set_by_name(const std::string& name) const {
    for (const auto& s : descriptor_sets)
        if (s.name == name) return s;
    throw ArgumentError("dataio.set_by_name", "unknown descriptor set: " + name);
}

ResponseVector validate_response(const std::vector<double>& values, bool force_continuous) {
    if (values.size() < 2)
        throw ValidationError("dataio.validate_response", "need at least 2 response values");
    bool all_binary = true;
    for (double v : values) {
        if (!std::isfinite(v))
            throw ValidationError("dataio.validate_response", "non-finite response value");
        if (v != 0.0 && v != 1.0) all_binary = false;
    }
    ResponseVector out;
    out.values = values;
    if (all_binary && !force_continuous) {
        std::size_t positives = 0;
        for (double v : values) positives += (v == 1.0);
        if (positives == 0 || positives == values.size())
            throw ValidationError("dataio.validate_response",
                                  "binary response contains a single class");
        out.kind = ResponseKind::Binary;
    } else {
        out.kind = ResponseKind::Continuous;
    }
    return out;
}

Dataset load_dataset(const std::string& path, const std::optional<std::string>& id_col,
                     const std::string& response_col, const DescriptorSetSpec& spec,
                     bool force_continuous) {
    const CsvTable table = read_csv(path);
    const std::size_t n = table.rows.size();
    if (n == 0) throw ValidationError("dataio.load_dataset", "no data rows in " + path);

    int id_idx = -1;
    if (id_col) {
        id_idx = table.column_index(*id_col);
        if (id_idx < 0)
            throw SchemaError("dataio.load_dataset", "missing ID column '" + *id_col + "'");
    }
    const int resp_idx = table.column_index(response_col);
    if (resp_idx < 0)
        throw SchemaError("dataio.load_dataset", "missing response column '" + response_col + "'");
    if (id_idx == resp_idx && id_idx >= 0)
        throw SchemaError("dataio.load_dataset", "ID and response refer to the same column");

    // Descriptor columns are everything else, kept in file order.
    std::vector<std::size_t> desc_cols;
    for (std::size_t c = 0; c < table.header.size(); ++c)
        if (static_cast<int>(c) != id_idx && static_cast<int>(c) != resp_idx)
            desc_cols.push_back(c);

    DescriptorSetSpec effective = spec;
    if (effective.lengths.empty()) {
        effective.lengths = {desc_cols.size()};
        effective.names = {"Set1"};
    }
    if (!effective.names.empty() && effective.names.size() != effective.lengths.size())
        throw ArgumentError("dataio.load_dataset", "names/lengths size mismatch in descriptor spec");
    if (effective.names.empty()) {
        for (std::size_t s = 0; s < effective.lengths.size(); ++s)
            effective.names.push_back("Set" + std::to_string(s + 1));
    }
    std::size_t total = 0;
    for (std::size_t len : effective.lengths) {
        if (len == 0)
            throw ArgumentError("dataio.load_dataset", "descriptor set length must be positive");
        total += len;
    }
    if (total > desc_cols.size()) {
        std::ostringstream msg;
        msg << "descriptor spec wants " << total << " columns, file has " << desc_cols.size();
        throw SchemaError("dataio.load_dataset", msg.str());
    }
    std::set<std::string> seen_names;
    for (const auto& name : effective.names) {
        if (name.empty())
            throw ArgumentError("dataio.load_dataset", "descriptor set name must be nonempty");
        if (!seen_names.insert(name).second)
            throw ArgumentError("dataio.load_dataset", "duplicate descriptor set name: " + name);
    }

    Dataset ds;
    if (id_idx >= 0) {
        std::set<std::string> seen_ids;
        for (const auto& row : table.rows) {
            if (!seen_ids.insert(row[id_idx]).second)
                throw ValidationError("dataio.load_dataset", "duplicate ID: " + row[id_idx]);
            ds.ids.push_back(row[id_idx]);
        }
    } else {
        for (std::size_t r = 0; r < n; ++r) ds.ids.push_back(std::to_string(r + 1));
    }

    std::vector<double> response(n);
    for (std::size_t r = 0; r < n; ++r) {
        std::ostringstream where;
        where << "row " << r + 2 << ", column '" << response_col << "'";
        response[r] = parse_double(table.rows[r][resp_idx], where.str());
    }
    ds.response = validate_response(response, force_continuous);

    std::size_t offset = 0;
    for (std::size_t s = 0; s < effective.lengths.size(); ++s) {
        DescriptorSet set;
        set.name = effective.names[s];
        set.width = effective.lengths[s];
        set.values.resize(n * set.width);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < set.width; ++c) {
                const std::size_t col = desc_cols[offset + c];
                std::ostringstream where;
                where << "row " << r + 2 << ", column '" << table.header[col] << "'";
                set.values[r * set.width + c] = parse_double(table.rows[r][col], where.str());
                if (!std::isfinite(set.values[r * set.width + c]))
                    throw ValidationError("dataio.load_dataset",
                                          "non-finite descriptor at " + where.str());
            }
        }
        ds.descriptor_sets.push_back(std::move(set));
        offset += effective.lengths[s];
    }
    return ds;
}

DatasetSchema load_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("dataio.load_schema", "cannot open schema: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("dataio.load_schema", std::string("invalid JSON: ") + e.what());
    }
    DatasetSchema schema;
    if (j.contains("id_col") && !j["id_col"].is_null())
        schema.id_col = j["id_col"].get<std::string>();
    if (!j.contains("response_col"))
        throw SchemaError("dataio.load_schema", "schema missing 'response_col'");
    schema.response_col = j["response_col"].get<std::string>();
    if (j.contains("sets")) {
        for (const auto& entry : j["sets"]) {
            schema.spec.names.push_back(entry.at("name").get<std::string>());
            schema.spec.lengths.push_back(entry.at("length").get<std::size_t>());
        }
    }
    return schema;
}

void write_dataset_csv(const Dataset& dataset, const std::string& path) {
    std::ostringstream out;
    out << "id,response";
    for (const auto& set : dataset.descriptor_sets)
        for (std::size_t c = 0; c < set.width; ++c) out << ',' << set.name << '_' << c + 1;
    out << '\n';
    for (std::size_t r = 0; r < dataset.n(); ++r) {
        out << dataset.ids[r] << ',' << format_double(dataset.response.values[r]);
        for (const auto& set : dataset.descriptor_sets)
            for (std::size_t c = 0; c < set.width; ++c) out << ',' << format_double(set.at(r, c));
        out << '\n';
    }
    write_text_file(path, out.str());
}

}  // namespace cvbench
