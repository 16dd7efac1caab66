import init, { render_svg, certify, reduction } from "./pkg/smallcuts_web.js";

const $ = (id) => document.getElementById(id);
let current = null;

function view() {
  return document.querySelector("input[name=view]:checked").value;
}

function drawGraph() {
  $("graph").innerHTML = render_svg(Number($("k").value), view());
}

function verdict(name, value, good) {
  const cls = good === undefined ? "" : good ? "ok" : "bad";
  return `<dt>${name}</dt><dd class="${cls}">${value}</dd>`;
}

function runCertify() {
  const k = Number($("k").value);
  const doc = JSON.parse(certify(k, Number($("trials").value), Number($("seed").value)));
  const c = doc.certificate;
  let html = "";
  html += verdict("overall", doc.ok ? "certified" : "FAILED", doc.ok);
  html += verdict("small cuts found", `${doc.family_size} (expected ${c.family.expected})`, c.family.exact);
  html += verdict("x* tight on all listed cuts", c.tight, c.tight);
  html += verdict("0 < x* < 1", c.bounds_strict, c.bounds_strict);
  html += verdict("rank(A)", `${c.rank_a} of ${c.m}`, c.rank_a === c.m);
  html += verdict("det(A)", c.det_a);
  html += verdict("det(A^PQ)", c.det_circulant);
  html += verdict("basic solution", c.is_basic, c.is_basic);
  html += verdict("largest coordinate", `${c.max_coordinate} (< 1/2: ${c.below_half})`, c.below_half);
  if (doc.probe) {
    html += verdict("contraction probe", `${doc.probe.found} cuts seen, all in family: ${doc.probe.contained}`, doc.probe.contained);
  }
  if (c.failures.length) html += verdict("failures", c.failures.join("; "), false);
  $("verdicts").innerHTML = html;
}

function matrixTable(rows, labels, k, highlight) {
  const m = rows[0].length;
  let html = "<table class=matrix><tr><th></th>";
  for (let c = 1; c <= m; c++) html += `<th>ℓ${c}</th>`;
  html += "</tr>";
  rows.forEach((row, r) => {
    const q = r < k - 1;
    html += `<tr class="${q && r === highlight ? "q" : ""}"><th>${labels[r]}</th>`;
    row.forEach((v, c) => {
      const cls = [v ? "one" : "", q && c < k - 1 && highlight === -1 ? "block" : ""].join(" ");
      html += `<td class="${cls}">${v}</td>`;
    });
    html += "</tr>";
  });
  return html + "</table>";
}

const set = (ids) => "{" + ids.map((i) => "ℓ" + i).join(", ") + "}";

function drawReduction() {
  const k = Number($("k").value);
  const j = Number($("row").value);
  const t = current.traces[j - 1];
  const lines = [
    `Q_${j}: g = ${t.g}, h = ${t.h}`,
    `row          ${set(t.q_links)}`,
    `- N_${t.h} + N_${t.g}  = 2 x ${set(t.halved)}`,
    ...t.steps.map((s) => `- N_${s.h} + N_${s.g}  -> ${set(s.links)}`),
    `final        ${set(t.final_links)}   phi = {${t.phi.join(", ")}}`,
  ];
  $("trace").textContent = lines.join("\n");
  $("matrix-a").innerHTML = matrixTable(current.a, current.row_labels, k, j - 1);
  $("matrix-r").innerHTML = matrixTable(current.reduced, current.row_labels, k, -1);
}

function loadK() {
  const k = Number($("k").value);
  current = JSON.parse(reduction(k));
  $("row").innerHTML = "";
  for (let j = 1; j < k; j++) $("row").add(new Option(`Q_${j}`, j));
  drawGraph();
  drawReduction();
  $("verdicts").innerHTML = "";
}

await init();
for (let k = 4; k <= 12; k += 2) $("k").add(new Option(k, k));
$("k").addEventListener("change", loadK);
document.querySelectorAll("input[name=view]").forEach((el) => el.addEventListener("change", drawGraph));
$("row").addEventListener("change", drawReduction);
$("run-certify").addEventListener("click", runCertify);
loadK();
