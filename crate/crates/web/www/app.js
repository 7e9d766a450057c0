import init, { normalize_expr, match_steps, dfa_json } from "./pkg/frx_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

function el(tag, attrs = {}, text) {
  const node = document.createElementNS(SVG, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

function showError(target, message) {
  target.replaceChildren();
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = message;
  target.append(p);
}

function runNormalize() {
  const out = $("normalize-out");
  const res = JSON.parse(normalize_expr($("expr").value));
  if (res.error) return showError(out, res.error);
  const lines = res.steps.map((s) => `${s.rule.padEnd(11)} ${s.before}  =>  ${s.after}`);
  lines.push("", res.normal_form);
  out.textContent = lines.join("\n");
}

function runMatch() {
  const out = $("match-out");
  const res = JSON.parse(match_steps($("expr").value, $("word").value));
  if (res.error) return showError(out, res.error);
  const table = document.createElement("table");
  for (const [sym, state] of res.chain) {
    const row = table.insertRow();
    row.insertCell().textContent = sym;
    row.insertCell().textContent = state;
  }
  const verdict = document.createElement("p");
  verdict.className = res.matched ? "yes" : "no";
  verdict.textContent = res.matched ? "match" : "no match";
  out.replaceChildren(table, verdict);
}

// States on a circle; self loops drawn as small arcs above the node.
function drawDfa(dfa) {
  const n = dfa.states.length;
  const radius = Math.max(120, n * 28);
  const size = 2 * radius + 160;
  const c = size / 2;
  const pos = dfa.states.map((_, i) => {
    const a = (2 * Math.PI * i) / n - Math.PI / 2;
    return [c + radius * Math.cos(a), c + radius * Math.sin(a)];
  });
  const svg = el("svg", { width: size, height: size, viewBox: `0 0 ${size} ${size}` });
  const defs = el("defs");
  const marker = el("marker", { id: "arrow", viewBox: "0 0 10 10", refX: 10, refY: 5, markerWidth: 7, markerHeight: 7, orient: "auto" });
  marker.append(el("path", { d: "M0,0 L10,5 L0,10 z", fill: "#555" }));
  defs.append(marker);
  svg.append(defs);

  const edges = new Map();
  for (const [from, sym, to] of dfa.transitions) {
    const key = `${from},${to}`;
    edges.set(key, (edges.get(key) || []).concat(sym));
  }
  const r = 16;
  for (const [key, syms] of edges) {
    const [from, to] = key.split(",").map(Number);
    const [x1, y1] = pos[from];
    const [x2, y2] = pos[to];
    const label = syms.join(",");
    if (from === to) {
      svg.append(el("path", { d: `M${x1 - 8},${y1 - r} C${x1 - 25},${y1 - 55} ${x1 + 25},${y1 - 55} ${x1 + 8},${y1 - r}`, fill: "none", stroke: "#555", "marker-end": "url(#arrow)" }));
      svg.append(el("text", { x: x1, y: y1 - 48, "text-anchor": "middle", "font-size": 12 }, label));
      continue;
    }
    const dx = x2 - x1, dy = y2 - y1, len = Math.hypot(dx, dy);
    const ux = dx / len, uy = dy / len;
    // bend so that opposite edges do not overlap
    const mx = (x1 + x2) / 2 - uy * 20, my = (y1 + y2) / 2 + ux * 20;
    svg.append(el("path", { d: `M${x1 + ux * r},${y1 + uy * r} Q${mx},${my} ${x2 - ux * r},${y2 - uy * r}`, fill: "none", stroke: "#555", "marker-end": "url(#arrow)" }));
    svg.append(el("text", { x: mx, y: my, "text-anchor": "middle", "font-size": 12 }, label));
  }
  dfa.states.forEach((state, i) => {
    const [x, y] = pos[i];
    const g = el("g");
    g.append(el("title", {}, state));
    g.append(el("circle", { cx: x, cy: y, r, fill: i === dfa.start ? "#def" : "#fff", stroke: "#333" }));
    if (dfa.accepting.includes(i)) g.append(el("circle", { cx: x, cy: y, r: r - 4, fill: "none", stroke: "#333" }));
    g.append(el("text", { x, y: y + 4, "text-anchor": "middle", "font-size": 11 }, `q${i}`));
    svg.append(g);
  });
  return svg;
}

function runDfa() {
  const out = $("dfa-out");
  const res = JSON.parse(dfa_json($("expr").value));
  if (res.error) return showError(out, res.error);
  const legend = document.createElement("table");
  res.states.forEach((s, i) => {
    const row = legend.insertRow();
    row.insertCell().textContent = `q${i}${res.accepting.includes(i) ? " (accepting)" : ""}`;
    row.insertCell().textContent = s;
  });
  out.replaceChildren(drawDfa(res), legend);
}

await init();
$("normalize").onclick = runNormalize;
$("match").onclick = runMatch;
$("dfa").onclick = runDfa;
runNormalize();
