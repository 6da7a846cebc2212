// In-process session engine for exported bundles. Mirrors the HTTP session API over
// data precomputed by the native engine: glyphs, declarations and preset layouts.
(function (root) {
  'use strict';

  function HelgraphCore(data) {
    this.data = data;
    this.entities = {};
    this.children = {};
    this.parent = {};
    this.order = [];
    var self = this;
    data.graph.entities.forEach(function (e) {
      self.entities[e.id] = e;
      self.children[e.id] = [];
    });
    (data.graph.relations.declares || []).forEach(function (pair) {
      self.children[pair[0]].push(pair[1]);
      self.parent[pair[1]] = pair[0];
    });
    var queue = data.graph.entities.filter(function (e) { return !(e.id in self.parent); })
      .map(function (e) { return e.id; });
    for (var head = 0; head < queue.length; head++) {
      this.order.push(queue[head]);
      queue.push.apply(queue, this.children[queue[head]]);
    }
    this.preset('default');
  }

  HelgraphCore.prototype._error = function (code, message) {
    var err = new Error(code + ': ' + message);
    err.code = code;
    throw err;
  };

  HelgraphCore.prototype._require = function (id) {
    if (!(id in this.entities)) this._error('UnknownId', 'unknown id ' + id);
  };

  HelgraphCore.prototype._recompute = function () {
    var reachable = {};
    this.visible = {};
    for (var i = 0; i < this.order.length; i++) {
      var id = this.order[i];
      var p = this.parent[id];
      reachable[id] = p === undefined || (reachable[p] && this.expanded[p] === true);
      if (reachable[id] && !this.removed[id]) this.visible[id] = true;
      else delete this.dimmed[id];
    }
    if (this.selection !== null && !this.visible[this.selection]) this.selection = null;
  };

  HelgraphCore.prototype._place = function () {
    var gap = this.data.config.layout.ringGap / 2;
    var next = {};
    for (var i = 0; i < this.order.length; i++) {
      var id = this.order[i];
      if (!this.visible[id]) continue;
      if (this.positions[id]) { next[id] = this.positions[id]; continue; }
      var anchor = this.parent[id];
      while (anchor !== undefined && !next[anchor]) anchor = this.parent[anchor];
      var base = anchor === undefined ? [0, 0] : next[anchor];
      var siblings = anchor === undefined ? [id] : this.children[anchor];
      var k = Math.max(1, siblings.indexOf(id));
      var angle = 2 * Math.PI * k / Math.max(1, siblings.length);
      next[id] = [base[0] + gap * Math.cos(angle), base[1] + gap * Math.sin(angle)];
    }
    this.positions = next;
  };

  HelgraphCore.prototype.meta = function () {
    var g = this.data.graph;
    return { label: g.metadata.label, formatVersion: g.formatVersion, entityCount: g.entities.length, session: this.state() };
  };

  HelgraphCore.prototype.state = function () {
    var pick = function (set) { return Object.keys(set).filter(function (k) { return set[k]; }).sort(); };
    return {
      preset: this.activePreset,
      visible: pick(this.visible),
      expanded: pick(this.expanded),
      removed: pick(this.removed),
      dimmed: pick(this.dimmed),
      selection: this.selection,
      relationVisibility: this.relationVisibility,
      converged: true
    };
  };

  HelgraphCore.prototype.preset = function (name) {
    var p = this.data.presets[name];
    if (!p) this._error('UnknownPreset', 'unknown preset ' + name);
    this.activePreset = name;
    this.expanded = {};
    this.removed = {};
    this.dimmed = {};
    this.selection = null;
    var self = this;
    p.expanded.forEach(function (id) { self.expanded[id] = true; });
    this.relationVisibility = Object.assign({}, p.relationVisibility);
    this.positions = {};
    Object.keys(p.positions).forEach(function (id) { self.positions[id] = p.positions[id]; });
    this._recompute();
    this._place();
    return this.state();
  };

  HelgraphCore.prototype.expand = function (id) {
    this._require(id);
    if (!this.visible[id]) this._error('NotVisible', id + ' is not visible');
    if (this.children[id].length === 0) this._error('NoChildren', id + ' has no children');
    this.expanded[id] = true;
    this._recompute();
    this._place();
    return this.state();
  };

  HelgraphCore.prototype.collapse = function (id) {
    this._require(id);
    if (!this.expanded[id]) this._error('NotExpanded', id + ' is not expanded');
    delete this.expanded[id];
    this._recompute();
    this._place();
    return this.state();
  };

  HelgraphCore.prototype.remove = function (id) {
    this._require(id);
    if (!this.visible[id]) this._error('NotVisible', id + ' is not visible');
    var stack = [id];
    while (stack.length) {
      var cur = stack.pop();
      this.removed[cur] = true;
      stack.push.apply(stack, this.children[cur]);
    }
    this._recompute();
    this._place();
    return this.state();
  };

  HelgraphCore.prototype.refresh = function () {
    this.removed = {};
    this.dimmed = {};
    this._recompute();
    this._place();
    return this.state();
  };

  HelgraphCore.prototype.select = function (id) {
    if (id !== null) {
      this._require(id);
      if (!this.visible[id]) this._error('NotVisible', id + ' is not visible');
    }
    this.selection = id;
    return this.state();
  };

  HelgraphCore.prototype.move = function (id, x, y) {
    this._require(id);
    if (!this.visible[id]) this._error('NotVisible', id + ' is not visible');
    this.positions[id] = [x, y];
    return this.state();
  };

  // Full-text and regex queries only; builder queries need the native engine.
  HelgraphCore.prototype.filter = function (query, mode) {
    var test;
    if (query.mode === 'regex') {
      var re;
      try { re = new RegExp(query.text); } catch (e) { this._error('InvalidRegex', e.message); }
      test = function (name) { return re.test(name); };
    } else if (query.mode === 'fullText') {
      var needle = query.text.toLowerCase();
      test = function (name) { return name.toLowerCase().indexOf(needle) >= 0; };
    } else {
      this._error('MalformedDocument', 'builder queries are not available offline');
    }
    var matched = [];
    var self = this;
    Object.keys(this.visible).sort().forEach(function (id) {
      if (test(self.entities[id].name)) matched.push(id);
    });
    var hit = {};
    matched.forEach(function (id) { hit[id] = true; });
    this.dimmed = {};
    Object.keys(this.visible).forEach(function (id) {
      if (hit[id]) return;
      if (mode === 'isolate') self.removed[id] = true;
      else self.dimmed[id] = true;
    });
    if (mode === 'isolate') { this._recompute(); this._place(); }
    return { matched: matched, session: this.state() };
  };

  HelgraphCore.prototype.layout = function () {
    return { converged: true, running: false, positions: this.positions };
  };

  HelgraphCore.prototype.glyphs = function (ids) {
    var out = {};
    var self = this;
    (ids || Object.keys(this.visible)).forEach(function (id) {
      self._require(id);
      var g = JSON.parse(JSON.stringify(self.data.glyphs[id]));
      if (!self.expanded[id] && self.children[id].length > 0) g.indicators.unshift('collapsedShadow');
      out[id] = g;
    });
    return out;
  };

  HelgraphCore.prototype.inspect = function (id) {
    this._require(id);
    return {
      entity: this.entities[id],
      declaration: this.data.declarations[id],
      glyph: this.glyphs([id])[id],
      visible: !!this.visible[id]
    };
  };

  root.HelgraphCore = HelgraphCore;
})(typeof window !== 'undefined' ? window : globalThis);
