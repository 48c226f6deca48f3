#!/usr/bin/env python3
# Copyright 2026 The evsynth Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the S1-S4 scenario fixtures under fixtures/scenarios/.

The evidence text is synthetic. Gene lists are real symbols but are not the
lists of any published study. Word totals per scenario are exact so the
reading-time arithmetic can be checked against known values.
"""

import json
import random
import sys
from pathlib import Path

SEED = 20261015

S1 = ["TP53", "BRAF", "KRAS", "EGFR", "PIK3CA", "PTEN", "ERBB2", "BRCA1",
      "BRCA2", "ALK", "MET", "NRAS", "CDKN2A"]
S2_NEW = ["NF1", "SMAD4", "APC", "CTNNB1", "FGFR1", "FGFR2", "FGFR3", "IDH1",
          "IDH2", "KIT", "PDGFRA", "RET", "ROS1", "MAP2K1", "STK11"]
S3_NEW = ["ARID1A", "ATM", "CDK4", "CDK6", "CCND1", "MYC", "MDM2", "NOTCH1",
          "NTRK1", "NTRK2", "NTRK3", "RB1", "SMARCA4", "TSC1", "TSC2", "VHL",
          "ERBB3", "ESR1", "AKT1", "MTOR", "PIK3R1", "KEAP1", "JAK2", "FBXW7"]
S4_NEW = ["ABL1", "BCR", "FLT3", "NPM1", "DNMT3A", "TET2", "ASXL1", "EZH2",
          "KMT2D", "CREBBP", "EP300", "SF3B1", "U2AF1", "RUNX1", "GATA3",
          "FOXA1", "AR", "SPOP", "BAP1", "PBRM1", "SETD2", "CDH1", "ERBB4",
          "MSH2", "MLH1", "PALB2", "RAD51C", "CHEK2", "POLE", "TERT"]
NEW_GENES = [S1, S2_NEW, S3_NEW, S4_NEW]
NAMES = ["S1", "S2", "S3", "S4"]

# Cumulative evidence words. S1 and S4 are the published endpoints; S2 and
# S3 are placeholders in between.
TOTAL_WORDS = [1656, 12480, 38920, 81627]

SOURCE_SHARE = {"civic": 0.45, "pharmgkb": 0.30, "enrichment": 0.25}
SOURCE_ID = {"civic": "CIVIC", "pharmgkb": "PHARMGKB",
             "enrichment": "ENRICHMENT"}
OUT_OF_SET = ["OR4F5", "OR2T8", "KRTAP5-1"]

VOCAB = (
    "patients tumor cohort variant mutation response therapy inhibitor "
    "sensitivity resistance expression pathway signaling kinase activation "
    "clinical trial outcome survival progression biomarker assay sample "
    "analysis treatment dose effect association evidence study reported "
    "observed significant reduced increased predictive prognostic diagnostic "
    "allele frequency germline somatic amplification deletion fusion "
    "metabolism clearance toxicity adverse efficacy benefit cell line model "
    "xenograft phase randomized retrospective prospective median months "
    "hazard ratio confidence interval level annotation guideline label "
    "enrichment term process regulation proliferation apoptosis repair "
    "damage checkpoint cycle growth receptor ligand binding domain").split()

DRUGS = ["vemurafenib", "dabrafenib", "trametinib", "cetuximab", "osimertinib",
         "erlotinib", "alpelisib", "olaparib", "trastuzumab", "crizotinib",
         "capmatinib", "imatinib", "larotrectinib", "palbociclib", "everolimus",
         "tamoxifen", "fluorouracil", "irinotecan", "cisplatin", "venetoclax"]
TERMS = ["cell population proliferation", "MAPK cascade",
         "regulation of apoptotic process", "DNA repair",
         "PI3K-Akt signaling pathway", "cell cycle checkpoint",
         "response to drug", "chromatin organization",
         "receptor tyrosine kinase signaling", "Pathways in cancer",
         "negative regulation of cell growth", "Wnt signaling pathway"]


def words(rng, n):
    return " ".join(rng.choice(VOCAB) for _ in range(n))


def count_words(s):
    return len(s.split())


class Universe:
    def __init__(self):
        self.rng = random.Random(SEED)
        self.counters = {"civic": 1000, "pharmgkb": 1449000000,
                         "enrichment": 1000}
        # (home scenario index, item dict) per source
        self.items = {s: [] for s in SOURCE_SHARE}

    def make_item(self, source, genes, n_words):
        rng = self.rng
        self.counters[source] += rng.randint(1, 9)
        n = self.counters[source]
        gene = genes[0]
        if source == "civic":
            variant = rng.choice(["V600E", "G12D", "L858R", "amplification",
                                  "loss", "fusion", "R175H", "E545K"])
            title = gene + " " + variant + " " + rng.choice(
                ["predictive evidence", "prognostic evidence",
                 "diagnostic evidence", "oncogenic evidence"])
            ident = "civic:EID" + str(n)
            url = "https://civicdb.org/evidence/" + str(n) + "/summary"
        elif source == "pharmgkb":
            drug = rng.choice(DRUGS)
            title = "Clinical annotation " + gene + " and " + drug + " response"
            ident = "pharmgkb:" + str(n)
            url = "https://www.pharmgkb.org/clinicalAnnotation/" + str(n)
        else:
            go = "GO:%07d" % n
            title = rng.choice(TERMS) + " (" + go + ")"
            ident = "gprofiler:" + go
            url = "https://amigo.geneontology.org/amigo/term/" + go
        body_words = n_words - count_words(title)
        if body_words < 5:
            raise ValueError("item too short")
        body = gene + " " + words(self.rng, body_words - 1)
        item = {"id": ident, "genes": genes, "title": title, "body": body,
                "citation_url": url}
        assert count_words(title) + count_words(body) == n_words
        return item

    def fill(self, source, home, genes, budget):
        rng = self.rng
        remaining = budget
        i = 0
        avg = max(30, budget // len(genes))
        lo, hi = max(25, int(avg * 0.6)), max(40, int(avg * 1.4))
        while remaining > 0:
            size = min(remaining, rng.randint(lo, hi))
            if remaining - size < lo:
                size = remaining
            primary = genes[i % len(genes)]
            if source == "enrichment":
                extra = rng.sample(genes, min(len(genes), rng.randint(1, 3)))
                item_genes = [primary] + [g for g in extra if g != primary]
            elif rng.random() < 0.2 and len(genes) > 1:
                other = rng.choice([g for g in genes if g != primary])
                item_genes = [primary, other]
            else:
                item_genes = [primary]
            self.items[source].append(
                (home, self.make_item(source, item_genes, size)))
            remaining -= size
            i += 1

    def out_of_set(self, source):
        # Items for genes outside every scenario; retrieval must drop them.
        saved = self.rng
        self.rng = random.Random(SEED + list(SOURCE_SHARE).index(source) + 1)
        items = [self.make_item(source, [g], 50) for g in OUT_OF_SET[:2]]
        self.rng = saved
        return items


def build_universe():
    u = Universe()
    prev = 0
    for home, total in enumerate(TOTAL_WORDS):
        budget = total - prev
        prev = total
        shares = {}
        left = budget
        for source in ["civic", "pharmgkb"]:
            shares[source] = int(round(budget * SOURCE_SHARE[source]))
            left -= shares[source]
        shares["enrichment"] = left
        for source in SOURCE_SHARE:
            u.fill(source, home, NEW_GENES[home], shares[source])
    return u


def analysis_json(genes, cites, source, approved_tone=True):
    expl = [{"gene": g, "explanation":
             g + " alterations in the " + source + " evidence bear directly "
             "on treatment selection for the question asked."}
            for g in genes]
    return json.dumps({
        "relevance_explanations": expl,
        "summary": "The " + source + " evidence supports " +
                   ", ".join(genes) + " as the most relevant genes.",
        "conclusions": [g + " is relevant to the research question."
                        for g in genes],
        "citations": [{"evidence_id": c, "url": None} for c in cites]})


def first_ids(items, gene, n):
    out = [it["id"] for it in items if gene in it["genes"]]
    assert out, "no evidence item for " + gene
    return out[:n]


def report_json(novel, known, cites_by_gene):
    def finding(text, genes):
        cites = []
        for g in genes:
            cites.extend(cites_by_gene[g])
        return {"text": text,
                "citations": [{"evidence_id": c} for c in cites]}
    return json.dumps({
        "novel_biomarkers": [
            finding(g + " emerges as a potential biomarker across sources.",
                    [g]) for g in novel],
        "implications": [{"text": "Targeted therapy selection should "
                                  "consider the combined evidence.",
                          "citations": []}],
        "well_known_interactions": [
            finding(g + " has an established interaction with approved "
                    "targeted therapy.", [g]) for g in known],
        "conclusions": [{"text": "The gene set contains actionable "
                                 "biomarkers.", "citations": []}]})


def mock_script(index, per_source):
    # Highlighted genes only grow with scenario size.
    novel = ["PIK3CA", "MET"] + [NEW_GENES[k][0] for k in range(1, index + 1)]
    known = ["BRAF", "KRAS", "EGFR"]
    focus = {"civic": ["BRAF", "KRAS", "EGFR"] + novel,
             "pharmgkb": ["EGFR", "BRAF", "KRAS"],
             "enrichment": ["PIK3CA", "MET", "KRAS"] + novel[2:]}
    script = {}
    cites_by_gene = {}
    for source, genes in focus.items():
        genes = list(dict.fromkeys(genes))
        items = per_source[source]
        cites = []
        for g in genes:
            ids = first_ids(items, g, 1)
            cites.extend(ids)
            if source == "civic":
                cites_by_gene[g] = ids
        good = analysis_json(genes, cites, SOURCE_ID[source])
        if source == "civic":
            script["civic.bioexpert/1"] = good
            script["civic.evaluator/1"] = (
                "NOT APPROVED\n- cite the CIViC item for the BRAF claim\n"
                "- clarify the summary")
            script["civic.bioexpert/2"] = good
            script["civic.evaluator/2"] = "APPROVED"
        elif source == "pharmgkb":
            script["pharmgkb.bioexpert/1"] = good
            script["pharmgkb.evaluator/1"] = "APPROVED"
        else:
            broken = json.loads(good)
            del broken["summary"]
            script["enrichment.bioexpert/1"] = json.dumps(broken)
            script["enrichment.bioexpert/2"] = good
            script["enrichment.evaluator/2"] = "APPROVED"
    report = report_json(novel, known, cites_by_gene)
    script["integration.composer/1"] = report
    script["integration.content_validator/1"] = "APPROVED"
    script["integration.critical_reviewer/1"] = (
        "NOT APPROVED\n- unsupported claim on KRAS")
    script["integration.relevance_validator/1"] = "APPROVED"
    script["integration.composer/2"] = report
    script["integration.content_validator/2"] = "APPROVED"
    script["integration.critical_reviewer/2"] = "APPROVED"
    script["integration.relevance_validator/2"] = "APPROVED"
    return script


def main():
    root = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parents[2] / "fixtures" / "scenarios")
    u = build_universe()
    noise = {s: u.out_of_set(s) for s in SOURCE_SHARE}
    scenarios = []
    genes = []
    for index, name in enumerate(NAMES):
        genes = genes + NEW_GENES[index]
        d = root / name
        d.mkdir(parents=True, exist_ok=True)
        per_source = {}
        total = 0
        for source in SOURCE_SHARE:
            items = [it for home, it in u.items[source] if home <= index]
            counts = {}
            for it in items:
                for g in it["genes"]:
                    counts[g] = counts.get(g, 0) + 1
            assert max(counts.values()) <= 25, (name, source)
            per_source[source] = items
            total += sum(count_words(it["title"]) + count_words(it["body"])
                         for it in items)
            doc = {"source_id": SOURCE_ID[source],
                   "items": [dict(it, rank=r) for r, it in
                             enumerate(items + noise[source])]}
            (d / (source + ".json")).write_text(
                json.dumps(doc, indent=1) + "\n")
        assert total == TOTAL_WORDS[index], (name, total)
        (d / "mock_script.json").write_text(
            json.dumps(mock_script(index, per_source), indent=1) + "\n")
        scenarios.append({"name": name, "genes": genes, "fixture_dir": name,
                          "mock_script": name + "/mock_script.json"})
    (root / "scenarios.json").write_text(json.dumps({
        "note": "Synthetic evidence; gene lists are illustrative, not "
                "published scenario data.",
        "context": "Tumor sequencing of a metastatic solid-tumor cohort "
                   "found recurrent alterations in the listed genes.",
        "question": "Which of these genes are actionable biomarkers for "
                    "targeted therapy, and which interactions are already "
                    "well established?",
        "scenarios": scenarios}, indent=1) + "\n")


if __name__ == "__main__":
    main()
