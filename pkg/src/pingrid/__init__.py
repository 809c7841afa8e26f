"""pingrid: text-to-shape-display authoring toolkit.

Turns natural-language prompts into executable pin-display scripts via a
chained LLM pipeline, runs them in a deterministic sandboxed 24x24 grid
runtime, serves the result over HTTP + an event stream, and mirrors frames
to hardware over MQTT.
"""

__version__ = "0.1.0"
