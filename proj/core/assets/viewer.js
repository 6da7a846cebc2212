// Canvas viewer. Talks to the session API over HTTP, or to HelgraphCore in-process
// when the page comes from an exported bundle.
(function () {
  'use strict';

  function remoteBackend() {
    function request(method, path, body) {
      var init = { method: method, headers: { 'Content-Type': 'application/json' } };
      if (body !== undefined) init.body = JSON.stringify(body);
      return fetch(path, init).then(function (r) {
        return r.json().then(function (j) {
          if (!r.ok) throw new Error(j.error ? j.error.code + ': ' + j.error.message : r.statusText);
          return j;
        });
      });
    }
    return {
      meta: function () { return request('GET', 'graph/meta'); },
      op: function (name, body) { return request('POST', 'session/' + name, body || {}); },
      filter: function (query, mode) { return request('POST', 'filter', { query: query, mode: mode }); },
      layout: function () { return request('GET', 'layout'); },
      glyphs: function (ids) { return request('GET', 'glyphs?ids=' + ids.map(encodeURIComponent).join(',')); },
      inspect: function (id) { return request('GET', 'node/' + encodeURIComponent(id)); },
      stream: function (onFrame) {
        var source = new EventSource('layout/stream');
        source.onmessage = function (e) { onFrame(JSON.parse(e.data)); };
        source.onerror = function () { source.close(); };
      }
    };
  }

  function localBackend(core) {
    function wrap(fn) {
      return new Promise(function (resolve) { resolve(fn()); });
    }
    var ops = {
      expand: function (b) { return core.expand(b.id); },
      collapse: function (b) { return core.collapse(b.id); },
      remove: function (b) { return core.remove(b.id); },
      refresh: function () { return core.refresh(); },
      preset: function (b) { return core.preset(b.name); },
      move: function (b) { return core.move(b.id, b.x, b.y, b.pin); },
      select: function (b) { return core.select(b.id === undefined ? null : b.id); }
    };
    return {
      meta: function () { return wrap(function () { return core.meta(); }); },
      op: function (name, body) { return wrap(function () { return ops[name](body || {}); }); },
      filter: function (query, mode) { return wrap(function () { return core.filter(query, mode); }); },
      layout: function () { return wrap(function () { return core.layout(); }); },
      glyphs: function (ids) { return wrap(function () { return core.glyphs(ids); }); },
      inspect: function (id) { return wrap(function () { return core.inspect(id); }); },
      stream: function () {}
    };
  }

  var backend = window.helgraphEngineData && window.HelgraphCore
    ? localBackend(new window.HelgraphCore(window.helgraphEngineData))
    : remoteBackend();

  var canvas = document.getElementById('diagram');
  var ctx = canvas.getContext('2d');
  var statusEl = document.getElementById('status');
  var inspector = document.getElementById('inspector');
  var view = { x: 0, y: 0, scale: 1 };
  var session = null;
  var positions = {};
  var glyphs = {};
  var drag = null;

  function setStatus(text) { statusEl.textContent = text; }

  function toWorld(px, py) {
    return [(px - canvas.width / 2) / view.scale - view.x, (py - canvas.height / 2) / view.scale - view.y];
  }

  function hit(px, py) {
    var w = toWorld(px, py);
    var best = null;
    (session ? session.visible : []).forEach(function (id) {
      var p = positions[id];
      var g = glyphs[id];
      if (!p || !g) return;
      var d = Math.hypot(p[0] - w[0], p[1] - w[1]);
      if (d <= g.radius && (best === null || d < best.d)) best = { id: id, d: d };
    });
    return best && best.id;
  }

  function draw() {
    canvas.width = canvas.clientWidth;
    canvas.height = canvas.clientHeight;
    ctx.setTransform(1, 0, 0, 1, 0, 0);
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    if (!session) return;
    ctx.translate(canvas.width / 2, canvas.height / 2);
    ctx.scale(view.scale, view.scale);
    ctx.translate(view.x, view.y);
    var dimmed = {};
    session.dimmed.forEach(function (id) { dimmed[id] = true; });
    session.visible.forEach(function (id) {
      var p = positions[id];
      var g = glyphs[id];
      if (!p || !g) return;
      ctx.globalAlpha = dimmed[id] ? 0.25 : 1;
      if (g.indicators.indexOf('collapsedShadow') >= 0) {
        ctx.shadowColor = 'rgba(0,0,0,0.35)';
        ctx.shadowBlur = 8;
      }
      ctx.beginPath();
      ctx.arc(p[0], p[1], g.radius, 0, 2 * Math.PI);
      ctx.fillStyle = g.fillColor;
      ctx.fill();
      ctx.shadowBlur = 0;
      if (g.donut) {
        ctx.lineWidth = g.donut.width;
        ctx.strokeStyle = '#444';
        var split = 2 * Math.PI * g.donut.staticFraction;
        ctx.beginPath();
        ctx.arc(p[0], p[1], g.radius + g.donut.width / 2, 0, split);
        ctx.stroke();
        ctx.strokeStyle = '#aaa';
        ctx.beginPath();
        ctx.arc(p[0], p[1], g.radius + g.donut.width / 2, split, 2 * Math.PI);
        ctx.stroke();
      }
      if (g.contour !== 'none') {
        ctx.setLineDash(g.contour === 'hexagonDashed' ? [3, 2] : []);
        ctx.lineWidth = 1.5;
        ctx.strokeStyle = '#222';
        ctx.beginPath();
        ctx.arc(p[0], p[1], g.radius + 1, 0, 2 * Math.PI);
        ctx.stroke();
        ctx.setLineDash([]);
      }
      if (g.effect !== 'none') {
        ctx.fillStyle = g.effect === 'fire' ? '#E4572E' : '#999';
        ctx.beginPath();
        ctx.arc(p[0] + g.radius * 0.7, p[1] - g.radius * 0.7, g.radius * 0.3, 0, 2 * Math.PI);
        ctx.fill();
      }
      if (session.selection === id) {
        ctx.lineWidth = 2;
        ctx.strokeStyle = '#0a84ff';
        ctx.beginPath();
        ctx.arc(p[0], p[1], g.radius + 4, 0, 2 * Math.PI);
        ctx.stroke();
      }
      ctx.fillStyle = '#222';
      ctx.font = '10px system-ui';
      ctx.textAlign = 'center';
      ctx.fillText(id.split('/').pop(), p[0], p[1] + g.radius + 11);
    });
    ctx.globalAlpha = 1;
  }

  function adopt(state) {
    session = state.session || state;
    return backend.layout().then(function (frame) {
      positions = frame.positions || {};
      var missing = session.visible;
      return missing.length ? backend.glyphs(missing) : {};
    }).then(function (batch) {
      glyphs = batch;
      setStatus(session.visible.length + ' nodes visible');
      draw();
      backend.stream(function (frame) {
        positions = frame.positions;
        draw();
      });
    });
  }

  function run(promise) {
    return promise.then(adopt).catch(function (e) { setStatus(e.message); });
  }

  function inspect(id) {
    backend.inspect(id).then(function (p) {
      var summary = p.entity.comment ? p.entity.comment.summary : '';
      inspector.innerHTML = '';
      var decl = document.createElement('p');
      decl.className = 'decl';
      decl.textContent = p.declaration;
      var doc = document.createElement('p');
      doc.textContent = summary;
      var raw = document.createElement('pre');
      raw.textContent = JSON.stringify(p, null, 2);
      inspector.append(decl, doc, raw);
    }).catch(function (e) { setStatus(e.message); });
  }

  canvas.addEventListener('dblclick', function (e) {
    var id = hit(e.offsetX, e.offsetY);
    if (!id) return;
    var op = session.expanded.indexOf(id) >= 0 ? 'collapse' : 'expand';
    run(backend.op(op, { id: id }));
  });

  canvas.addEventListener('mousedown', function (e) {
    var id = hit(e.offsetX, e.offsetY);
    if (id) backend.op('select', { id: id }).then(function (s) { session = s; draw(); });
    drag = { id: e.shiftKey ? id : null, x: e.offsetX, y: e.offsetY };
  });

  canvas.addEventListener('mousemove', function (e) {
    if (!drag) return;
    if (drag.id) {
      positions[drag.id] = toWorld(e.offsetX, e.offsetY);
    } else {
      view.x += (e.offsetX - drag.x) / view.scale;
      view.y += (e.offsetY - drag.y) / view.scale;
      drag.x = e.offsetX;
      drag.y = e.offsetY;
    }
    draw();
  });

  canvas.addEventListener('mouseup', function (e) {
    if (drag && drag.id) {
      var w = toWorld(e.offsetX, e.offsetY);
      run(backend.op('move', { id: drag.id, x: w[0], y: w[1], pin: true }));
    }
    drag = null;
  });

  canvas.addEventListener('wheel', function (e) {
    e.preventDefault();
    view.scale *= e.deltaY < 0 ? 1.1 : 1 / 1.1;
    draw();
  }, { passive: false });

  document.addEventListener('keydown', function (e) {
    if (e.target.tagName === 'INPUT') return;
    var sel = session && session.selection;
    if (e.key === 'Delete' && sel) run(backend.op('remove', { id: sel }));
    else if ((e.key === 'e' || e.key === 'E') && sel) run(backend.op('expand', { id: sel }));
    else if ((e.key === 'c' || e.key === 'C') && sel) run(backend.op('collapse', { id: sel }));
    else if ((e.key === 'i' || e.key === 'I') && sel) inspect(sel);
    else if (e.key === 'r' || e.key === 'R') run(backend.op('refresh'));
    else if (e.key === 'Escape') backend.op('select', {}).then(function (s) { session = s; draw(); });
  });

  document.getElementById('preset').addEventListener('change', function (e) {
    run(backend.op('preset', { name: e.target.value }));
  });
  document.getElementById('refresh').addEventListener('click', function () { run(backend.op('refresh')); });
  document.getElementById('search').addEventListener('keydown', function (e) {
    if (e.key !== 'Enter') return;
    var query = { mode: document.getElementById('searchMode').value, text: e.target.value };
    run(backend.filter(query, e.shiftKey ? 'isolate' : 'highlight'));
  });
  window.addEventListener('resize', draw);

  run(backend.meta());
})();
