#!/usr/bin/env python3
# Copyright 2026 The edgefuse Authors.
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

"""Writes the bundled latency-comparison scenario.

200 records, 50 per track. Query texts are separable by the bundled lexicon.
Latencies are synthetic: edge first token 150 ms, cloud 1200 ms, 40 ms
between tokens. Output is deterministic.
"""

import argparse
import json
import sys

EDGE_TTFT = 150
CLOUD_TTFT = 1200
GAP = 40
SEED = 20250401

SCENES = [
    ("street", "a quiet street with parked cars on both sides"),
    ("kitchen", "a small kitchen with a counter near the window"),
    ("park", "a park path lined with benches and tall trees"),
    ("station", "a train platform with a yellow safety line"),
    ("office", "an open office with rows of desks"),
    ("market", "a busy market aisle with stacked produce"),
    ("lobby", "a hotel lobby with a reception desk ahead"),
    ("bus", "a bus stop with a glass shelter"),
    ("hallway", "a long hallway with doors on the right"),
    ("garden", "a garden with a gravel path and low hedges"),
]

GENERIC_QUESTIONS = [
    "What is in front of me?",
    "Describe this place for me.",
    "Where am I standing?",
    "Is the way ahead clear?",
    "What does this scene look like?",
]

URGENT_PREFIXES = ["Quick,", "Hurry,", "Urgent:", "Quickly,", "Fast,"]

# Expert frames: (frame id, route, payload, normal query, urgent query).
EXPERT_FRAMES = {
    "OCR": [
        ("menu", "Soup $4.99", "Can you read the text on this menu?", "Quick, read the menu text."),
        ("bottle", "Ibuprofen 200 mg, take one tablet every six hours",
         "Please read the label text on this bottle.", "Hurry, read this label text."),
        ("sign", "Platform 4, trains to Central", "What is written on this sign?", "Quick, what is written on the sign?"),
        ("letter", "Your appointment is on Monday at 9 AM", "Read the text of this letter.",
         "Urgent: read the text of this letter."),
        ("door", "Staff only, no entry", "What text is written on the door sign?", "Quickly, read the door sign text."),
    ],
    "Object": [
        ("desk", "laptop; mug; keys", "What objects and items are on the desk?", "Quick, what objects and items are here?"),
        ("gate", "suitcase; person; sign", "Which objects and items are near the gate?",
         "Hurry, list the objects and items near the gate."),
        ("table", "plate; fork; glass", "Name the objects and items on the table.",
         "Quickly, name the objects and items on the table."),
        ("shelf", "book; lamp; clock", "What items and objects are on this shelf?",
         "Urgent: what items and objects are on the shelf?"),
        ("bench", "backpack; umbrella", "Are there any objects or items on the bench?",
         "Fast, any objects or items on the bench?"),
    ],
    "Face": [
        ("lobby", "John Doe", "Do I know anyone here?", "Quick, do I know anyone here?"),
        ("cafe", "Maria Lopez; Sam Chen", "Is any friend of mine here? Who is it?", "Hurry, who is here that I know?"),
        ("meeting", "Priya Nair", "Who is this? Do I know them?", "Quickly, who is this person I know?"),
        ("party", "Alex Kim; Jordan Lee", "Can you recognize anyone at this table?",
         "Urgent: recognize anyone I know here."),
        ("doorway", "Chris Park", "Who is at the door? Do I know them?", "Fast, who is at the door? Do I know them?"),
    ],
}


def words(text):
    return len(text.split())


def generic_texts(scene, question_index):
    name, place = scene
    opening = "You are in %s." % place
    edge = (opening + " The area right in front of you looks open, with nothing blocking "
            "the first few steps.")
    cloud = (opening + " The path ahead is clear for about ten steps. A %s landmark is slightly "
             "to your left, and the nearest obstacle is a low curb on the right." % name)
    if question_index % 2:
        cloud += " Walk slowly."
    return edge, cloud


def expert_cloud(route, frame, payload):
    lead = {
        "OCR": "The text in the image reads: %s." % payload,
        "Object": "I can see the following: %s." % payload.replace(";", ","),
        "Face": "The people visible here appear to be %s." % payload.replace(";", " and"),
    }[route]
    detail = (
        " The photo was taken from about arm's length and is slightly tilted, so some edges are cut off."
        " The lighting is soft and comes from the upper left, which leaves part of the %s in shadow."
        " Nothing else in the frame looks important, although there is some background clutter"
        " that I cannot identify with confidence. If you move the camera a little to the right"
        " and hold it steady for a second, I can give you a more complete and reliable description"
        " of everything in view, including smaller details near the bottom edge of the picture." % frame
    )
    return lead + detail


def edge_expert(route, payload):
    return {
        "OCR": "It looks like some printed text, possibly %s." % payload.split(",")[0],
        "Object": "There seem to be a few things here, such as a %s." % payload.split(";")[0],
        "Face": "There is at least one person in front of you.",
    }[route]


def script(text, ttft):
    return {"ttft_ms": ttft, "text": text, "gap_ms": GAP, "terminal": "end"}


def build():
    records = []
    n = 0

    def add(query, frame, urgent, route, edge, cloud, experts):
        nonlocal n
        n += 1
        rec = {
            "kind": "record",
            "id": "q%03d" % n,
            "query": query,
            "frame": frame,
            "truth": {"urgent": urgent, "route": route},
            "scripts": {"edge": script(edge, EDGE_TTFT), "cloud": script(cloud, CLOUD_TTFT)},
        }
        if experts:
            rec["experts"] = experts
        records.append(rec)

    for urgent in (True, False):
        for i in range(50):
            scene = SCENES[i % len(SCENES)]
            q = GENERIC_QUESTIONS[i % len(GENERIC_QUESTIONS)]
            if urgent:
                prefix = URGENT_PREFIXES[i % len(URGENT_PREFIXES)]
                q = prefix + " " + q[0].lower() + q[1:]
            edge, cloud = generic_texts(scene, i)
            add(q, "%s-%02d" % (scene[0], i // len(SCENES) + 1), urgent, "Generic", edge, cloud, None)

    routes = ["OCR", "Object", "Face"]
    for urgent in (True, False):
        for i in range(50):
            route = routes[i % 3]
            frames = EXPERT_FRAMES[route]
            fid, payload, normal_q, urgent_q = frames[(i // 3) % len(frames)]
            frame = "%s-%02d" % (fid, i // 15 + 1)
            experts = [{"route": route, "payload": payload, "latency_ms": 40}]
            add(urgent_q if urgent else normal_q, frame, urgent, route, edge_expert(route, payload),
                expert_cloud(route, fid, payload), experts)
    return records


def estimate(records):
    # Coarse check of the scripted means; the simulator is the reference.
    def cloud_turn(r):
        return CLOUD_TTFT + GAP * (words(r["scripts"]["cloud"]["text"]) - 1)

    cloud = sum(cloud_turn(r) for r in records) / len(records)
    return cloud


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="-", help="output path, '-' for stdout")
    args = ap.parse_args()
    records = build()
    header = {"kind": "header", "schema": 1, "seed": SEED, "overrides": {"editor_latency_ms": 800}}
    lines = [json.dumps(header, separators=(",", ":"))]
    lines += [json.dumps(r, separators=(",", ":"), ensure_ascii=False) for r in records]
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    print("records: %d, cloud-only mean turnaround ~%.0f ms" % (len(records), estimate(records)), file=sys.stderr)


if __name__ == "__main__":
    main()
