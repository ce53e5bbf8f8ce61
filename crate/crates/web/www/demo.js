import init, { zoo_names, profile_zoo, profile_csv, envelope_csv } from "./pkg/lipderiv_web.js";

const $ = (id) => document.getElementById(id);
const esc = (s) => s.replace(/[&<>"]/g, (c) => `&#${c.charCodeAt(0)};`);

function num(v) {
  if (v === "inf") return Infinity;
  if (v === "-inf") return -Infinity;
  if (v === "nan" || v === null) return NaN;
  return v;
}

function fmt(v) {
  v = num(v);
  if (!Number.isFinite(v)) return String(v);
  return Math.abs(v) >= 1e4 || (v !== 0 && Math.abs(v) < 1e-3) ? v.toExponential(3) : v.toFixed(4);
}

// Draws each series as a polyline; infinite values are clipped to the frame.
function plot(canvas, xs, series) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 30;
  ctx.clearRect(0, 0, w, h);
  const finite = series.flatMap((s) => s.ys.filter(Number.isFinite));
  let lo = Math.min(0, ...finite), hi = Math.max(...finite, lo + 1);
  const span = hi - lo;
  lo -= 0.05 * span;
  hi += 0.05 * span;
  const x0 = Math.min(...xs), x1 = Math.max(...xs);
  const px = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (w - 2 * pad);
  const py = (y) => {
    if (y === Infinity) return pad / 2;
    if (y === -Infinity) return h - pad / 2;
    return h - pad - ((y - lo) / (hi - lo)) * (h - 2 * pad);
  };
  ctx.strokeStyle = "#ccc";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#666";
  ctx.fillText(fmt(hi), 2, pad);
  ctx.fillText(fmt(lo), 2, h - pad);
  ctx.fillText(fmt(x0), pad, h - 8);
  ctx.fillText(fmt(x1), w - pad - 40, h - 8);
  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = s.width || 1.5;
    ctx.beginPath();
    let pen = false;
    s.ys.forEach((y, i) => {
      if (Number.isNaN(y)) {
        pen = false;
        return;
      }
      pen ? ctx.lineTo(px(xs[i]), py(y)) : ctx.moveTo(px(xs[i]), py(y));
      pen = true;
    });
    ctx.stroke();
  }
}

function guard(errId, f) {
  return () => {
    $(errId).textContent = "";
    try {
      f();
    } catch (e) {
      $(errId).textContent = e.message || String(e);
    }
  };
}

function runZoo() {
  const out = JSON.parse(
    profile_zoo($("zoo-name").value, +$("zoo-res").value, +$("zoo-rmax").value, 0.5, +$("zoo-steps").value),
  );
  $("zoo-desc").textContent = out.description;
  const xs = out.points.map((p) => p.x);
  const col = (f) => out.points.map((p) => num(f(p)));
  plot($("zoo-plot"), xs, [
    { ys: col((p) => p.oracle.big), color: "#999", width: 4 },
    { ys: col((p) => p.lip), color: "#1f77b4" },
    { ys: col((p) => p.big), color: "#d62728" },
    { ys: col((p) => p.loc), color: "#2ca02c" },
  ]);
}

function runCloud() {
  const rows = JSON.parse(
    profile_csv($("cloud-csv").value, $("cloud-norm").value, +$("cloud-rmax").value, +$("cloud-q").value,
      +$("cloud-steps").value),
  );
  const head = "<tr><th>id</th><th>nearest</th><th>lip</th><th>Lip</th><th>loc</th><th>divergent</th></tr>";
  $("cloud-table").innerHTML = head + rows
    .map((r) => `<tr><td>${esc(r.id)}</td><td>${fmt(r.nearest)}</td><td>${fmt(r.lip)}</td><td>${fmt(r.big)}</td>` +
      `<td>${fmt(r.loc)}</td><td>${r.divergent ? "yes" : ""}</td></tr>`)
    .join("");
}

function runEnvelope() {
  const rows = JSON.parse(envelope_csv($("env-csv").value, +$("env-h").value));
  const xs = rows.map((r, i) => (r.x === null ? i : r.x));
  const col = (k) => rows.map((r) => num(r[k]));
  plot($("env-plot"), xs, [
    { ys: col("upper"), color: "#d62728", width: 3 },
    { ys: col("lower"), color: "#1f77b4", width: 3 },
    { ys: col("value"), color: "#222" },
  ]);
}

function indicatorCsv() {
  const lines = ["id,x1,value"];
  for (let i = 0; i <= 40; i++) lines.push(`p${i},${(i * 0.025).toFixed(3)},${i >= 18 && i <= 22 ? 1 : 0}`);
  return lines.join("\n");
}

await init();
for (const e of JSON.parse(zoo_names())) {
  const opt = document.createElement("option");
  opt.value = e.name;
  opt.textContent = e.name;
  opt.title = e.description;
  $("zoo-name").append(opt);
}
$("zoo-name").value = "sqrt-abs";
$("env-csv").value = indicatorCsv();
$("zoo-run").onclick = guard("zoo-err", runZoo);
$("cloud-run").onclick = guard("cloud-err", runCloud);
$("env-run").onclick = guard("env-err", runEnvelope);
guard("zoo-err", runZoo)();
