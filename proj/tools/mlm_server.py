#!/usr/bin/env python3
"""Serve a Hugging Face masked language model for the `http` MLM backend.

    pip install torch transformers
    python3 tools/mlm_server.py --model bert-base-chinese --port 8765

Then point a run config at it:

    [mlm]
    backend = http
    url = http://127.0.0.1:8765
    model = bert-base-chinese

Endpoints (JSON in, JSON out):
    GET  /health
    POST /predict      {tokens, pair_boundary, position, top_n, model, device}
    POST /probability  {tokens, pair_boundary, position, token, model, device}
"""

import argparse
import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import torch
from transformers import AutoModelForMaskedLM, AutoTokenizer

MASK = "[MASK]"


class ModelCache:
    def __init__(self, default_model, default_device):
        self.default_model = default_model
        self.default_device = default_device
        self._models = {}
        self._lock = threading.Lock()

    def get(self, name, device):
        name = name or self.default_model
        device = device or self.default_device
        key = (name, device)
        with self._lock:
            if key not in self._models:
                tok = AutoTokenizer.from_pretrained(name)
                model = AutoModelForMaskedLM.from_pretrained(name).to(device).eval()
                self._models[key] = (tok, model, device, threading.Lock())
            return self._models[key]


def masked_distribution(entry, tokens, pair_boundary, position):
    """Softmax over the vocabulary at `position` of the (optionally paired) input."""
    tok, model, device, lock = entry
    if pair_boundary is None:
        first, second = tokens, None
    else:
        first, second = tokens[:pair_boundary], tokens[pair_boundary:]

    def ids(seq):
        return [tok.mask_token_id if t == MASK else tok.convert_tokens_to_ids(t) for t in seq]

    input_ids = [tok.cls_token_id] + ids(first) + [tok.sep_token_id]
    type_ids = [0] * len(input_ids)
    index = 1 + position
    if second is not None:
        input_ids += ids(second) + [tok.sep_token_id]
        type_ids += [1] * (len(second) + 1)
        if position >= pair_boundary:
            index = 2 + position
    batch = {
        "input_ids": torch.tensor([input_ids], device=device),
        "token_type_ids": torch.tensor([type_ids], device=device),
        "attention_mask": torch.ones(1, len(input_ids), dtype=torch.long, device=device),
    }
    with lock, torch.no_grad():
        logits = model(**batch).logits[0, index]
    return tok, torch.softmax(logits.float(), dim=-1)


def is_candidate_token(text, special):
    return text not in special and not text.startswith("##") and len(text) == 1


class Handler(BaseHTTPRequestHandler):
    cache = None

    def _reply(self, status, payload):
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self):
        if self.path == "/health":
            self._reply(200, {"status": "ok", "model": self.cache.default_model})
        else:
            self._reply(404, {"error": "not found"})

    def do_POST(self):
        try:
            length = int(self.headers.get("Content-Length", 0))
            req = json.loads(self.rfile.read(length))
            entry = self.cache.get(req.get("model"), req.get("device"))
            tok, probs = masked_distribution(entry, req["tokens"], req.get("pair_boundary"), req["position"])
            if self.path == "/predict":
                special = set(tok.all_special_tokens)
                entries = []
                values, indices = torch.sort(probs, descending=True)
                for p, i in zip(values.tolist(), indices.tolist()):
                    text = tok.convert_ids_to_tokens(i)
                    if is_candidate_token(text, special):
                        entries.append({"token": text, "prob": p})
                        if len(entries) == req["top_n"]:
                            break
                self._reply(200, {"entries": entries})
            elif self.path == "/probability":
                token_id = tok.convert_tokens_to_ids(req["token"])
                known = token_id is not None and token_id != tok.unk_token_id
                self._reply(200, {"probability": probs[token_id].item() if known else None})
            else:
                self._reply(404, {"error": "not found"})
        except (KeyError, ValueError, TypeError) as e:
            self._reply(400, {"error": str(e)})

    def log_message(self, fmt, *args):
        pass


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--model", default="bert-base-chinese")
    ap.add_argument("--device", default="cpu")
    ap.add_argument("--host", default="127.0.0.1")
    ap.add_argument("--port", type=int, default=8765)
    args = ap.parse_args()
    Handler.cache = ModelCache(args.model, args.device)
    Handler.cache.get(args.model, args.device)
    server = ThreadingHTTPServer((args.host, args.port), Handler)
    print(f"serving {args.model} on http://{args.host}:{args.port}", flush=True)
    server.serve_forever()


if __name__ == "__main__":
    main()
